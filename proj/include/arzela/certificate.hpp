#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "arzela/function_sequence.hpp"
#include "arzela/interval_set.hpp"

namespace arzela {

/// Closed rational interval [lo, hi], lo <= hi.
struct ClosedInterval {
    ClosedInterval(Rat lo, Rat hi);

    Rat lo;
    Rat hi;

    bool contains(const Rat& x) const { return !(x < lo) && !(hi < x); }
    /// Proper subset of o (containment with at least one strict endpoint).
    bool strictly_inside(const ClosedInterval& o) const;

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// The component of the level-n set that contains the witness.
struct LevelEvidence {
    int level = 0;
    OpenInterval component;
};

/// How the witness was produced: a nested chain of closed intervals built
/// from three-descendant splits, or a cluster of fat-path midpoints.
enum class WitnessMode { NestedClosedIntervals, FatPathCluster };

std::string to_string(WitnessMode mode);
WitnessMode witness_mode_from_string(const std::string& s);

/// Finite, exactly checkable evidence that witness lies in every inspected
/// level set. levels is the number of inspected levels N, max_index the term
/// budget M the levels were built from, spec_hash a digest of the source
/// sequence description.
struct WitnessCertificate {
    Rat witness;
    WitnessMode mode = WitnessMode::NestedClosedIntervals;
    std::vector<ClosedInterval> chain;  // mode nested-closed-intervals
    std::vector<Rat> midpoints;         // mode fat-path-cluster
    std::vector<LevelEvidence> evidence;
    Rat epsilon;
    int levels = 0;
    int max_index = 0;
    std::string spec_hash;
};

void to_json(nlohmann::json& j, const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const nlohmann::json& j);

/// Outcome of re-checking a certificate from scratch. Clauses: (1) the chain
/// is strictly nested and every element contains the witness; (2) the witness
/// lies in every level set, in the component the evidence names; (3) over the
/// indices selected at (epsilon, max_index), every tall support containing
/// the witness sees a function value above epsilon there, and at least one
/// index does. first_failed_clause is 0 on a pass.
struct VerificationReport {
    bool pass = false;
    int first_failed_clause = 0;
    std::string detail;
    bool sequence_checked = false;
    int value_hits = 0;
    int indices_checked = 0;

    /// Deterministic plain-text rendering; equal reports render identically.
    std::string render(const WitnessCertificate& cert) const;
};

/// Re-checks the certificate against the level sets and, when a sequence is
/// given, against the sequence's terms (clause 3 is skipped without one).
/// Never throws on a failed clause; failures are reported.
VerificationReport verify_certificate(const WitnessCertificate& cert,
                                      const std::vector<IntervalSet>& levels,
                                      const FunctionSequence* seq = nullptr);

}  // namespace arzela
