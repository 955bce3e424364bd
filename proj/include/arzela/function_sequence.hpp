#pragma once

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arzela/step_function.hpp"

namespace arzela {

/// A sequence f_1, f_2, ... of step functions on a common domain, uniformly
/// bounded: |f_n(x)| <= bound for all n, x. Family and derived sequences are
/// lazily generated; explicit lists are validated up front, generated terms
/// on access.
class FunctionSequence {
public:
    enum class Kind { Family, ExplicitList, Derived };
    using Generator = std::function<StepFunction(int)>;

    static FunctionSequence explicit_list(std::vector<StepFunction> terms, Rat bound,
                                          Rat dom_lo, Rat dom_hi);
    static FunctionSequence lazy(Kind kind, std::string description, Generator gen,
                                 Rat bound, Rat dom_lo, Rat dom_hi);

    Kind kind() const { return kind_; }
    const Rat& bound() const { return bound_; }
    const Rat& domain_lo() const { return dom_lo_; }
    const Rat& domain_hi() const { return dom_hi_; }

    /// Terms available, or nullopt for unbounded (family / derived) sequences.
    std::optional<int> term_count() const;

    /// n-th term, n >= 1. Indices past an explicit list are an error.
    StepFunction term(int n) const;

    /// Canonical description string; stable input for digests.
    const std::string& description() const { return description_; }

    const std::string& family_name() const { return family_name_; }
    const std::map<std::string, Rat>& family_params() const { return params_; }

private:
    FunctionSequence() = default;

    Kind kind_ = Kind::ExplicitList;
    std::string family_name_;
    std::map<std::string, Rat> params_;
    std::vector<StepFunction> terms_;
    Generator gen_;
    Rat bound_;
    Rat dom_lo_;
    Rat dom_hi_;
    std::string description_;

    friend FunctionSequence make_family(const std::string&,
                                        const std::map<std::string, Rat>&);
};

/// Built-in families on [0,1] with bound 1:
///   shrinking-bump     indicator of (0, 1/n), optional "height" param
///   sliding-typewriter indicator of the n-th dyadic interval: level
///                      j = floor(log2 n), slot k = n - 2^j, covering
///                      (k/2^j, (k+1)/2^j); no params
///   fixed-plateau      indicator of (lo, hi), params "lo", "hi", "height",
///                      defaults (1/4, 3/4) at height 1
///   fat-path-shrinker  indicator of (0, 1/2 + 1/(n+1)); no params
/// Unknown family names, unknown param keys, and out-of-range values are
/// errors.
FunctionSequence make_family(const std::string& name,
                             const std::map<std::string, Rat>& params = {});

/// Pointwise |f - g| on the merged partition, with explicit point values.
StepFunction abs_difference(const StepFunction& f, const StepFunction& g);

/// The rescaled comparison sequence g_n(t) = |f_n(a+t(b-a)) - f(a+t(b-a))| / (2C)
/// on [0,1], values in [0,1]. seq converges pointwise (in integral) to limit
/// iff g_n converges to 0 likewise. The limit must share seq's domain and
/// respect its bound.
FunctionSequence reduce_to_unit(const FunctionSequence& seq, const StepFunction& limit);

/// FNV-1a 64 over the sequence description, as 16 hex digits.
std::string source_digest(const FunctionSequence& seq);
std::string fnv1a64_hex(const std::string& data);

// File form: {"family":"sliding-typewriter","params":{...}} or
// {"terms":[...],"bound":"1","domain":["0","1"]}. Derived sequences have no
// file form.
void to_json(nlohmann::json& j, const FunctionSequence& seq);
FunctionSequence sequence_from_json(const nlohmann::json& j);

/// Black-box function with a declared value bound and caller-supplied
/// integrability evidence (a lower bound on the lower sum achievable at a
/// given mesh). Used only for standalone lower-sum estimates; the witness
/// pipeline is step-function-exact end to end.
struct SampledFunction {
    std::function<Rat(const Rat&)> evaluator;
    Rat value_bound;
    std::function<Rat(const Rat&)> declared_modulus;
};

/// Lower-sum surrogate: per piece, min of evaluator samples near both ends
/// (offset length/64) and at the midpoint, times piece length. A true lower
/// bound whenever the evaluator's infimum on each piece is attained within
/// sample distance, which is the caller's declared assumption.
Rat lower_sum(const SampledFunction& f, const std::vector<Rat>& partition);

}  // namespace arzela
