#pragma once

#include <json.hpp>

#include <optional>
#include <vector>

#include "arzela/rational.hpp"

namespace arzela {

/// Piecewise-constant function with rational breakpoints on a compact
/// rational domain [breakpoints.front(), breakpoints.back()]. Pieces are the
/// open intervals between consecutive breakpoints; values at the breakpoints
/// themselves default to the right piece (the last breakpoint takes the left
/// piece) unless explicit point values are supplied. A finite set of points
/// never affects integrals or open support sets, so the default is purely a
/// determinism choice for pointwise evaluation.
class StepFunction {
public:
    StepFunction(std::vector<Rat> breakpoints, std::vector<Rat> values,
                 std::optional<std::vector<Rat>> point_values = std::nullopt);

    const std::vector<Rat>& breakpoints() const { return breakpoints_; }
    const std::vector<Rat>& values() const { return values_; }
    std::size_t piece_count() const { return values_.size(); }

    const Rat& domain_lo() const { return breakpoints_.front(); }
    const Rat& domain_hi() const { return breakpoints_.back(); }

    bool has_explicit_point_values() const { return point_values_.has_value(); }

    /// Value at breakpoints[i], explicit or by the default rule.
    const Rat& point_value(std::size_t i) const;

    /// Exact pointwise evaluation; x must lie in the domain.
    const Rat& evaluate(const Rat& x) const;

    /// Exact integral: sum of value_i * piece_length_i. Point values never
    /// contribute.
    Rat integral() const;

    /// min / max over piece values and point values.
    Rat min_value() const;
    Rat max_value() const;

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    std::vector<Rat> breakpoints_;
    std::vector<Rat> values_;
    std::optional<std::vector<Rat>> point_values_;
};

/// Indicator of the open interval (lo, hi) on the unit domain [0,1];
/// requires 0 <= lo < hi <= 1. Zero-width edge pieces are omitted.
StepFunction indicator(const Rat& lo, const Rat& hi);

/// Same function, finer partition: inserts the given extra breakpoints
/// (those inside the domain) without changing any value, including point
/// values at the original breakpoints.
StepFunction refine(const StepFunction& f, const std::vector<Rat>& extra);

/// Sorted union of both breakpoint lists (domains must match).
std::vector<Rat> merged_breakpoints(const StepFunction& f, const StepFunction& g);

// JSON form: {"breakpoints":["0","1/4","1"],"values":["1","0"]} with an
// optional "point_values" array (one entry per breakpoint).
void to_json(nlohmann::json& j, const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

}  // namespace arzela
