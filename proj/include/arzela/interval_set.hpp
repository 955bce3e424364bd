#pragma once

#include <json.hpp>

#include <vector>

#include "arzela/rational.hpp"

namespace arzela {

/// Nonempty open interval (lo, hi) inside the unit interval.
/// Empty intervals are unrepresentable: lo < hi is a constructor invariant,
/// so "no empty components" holds everywhere downstream for free.
struct OpenInterval {
    Rat lo;
    Rat hi;

    OpenInterval(Rat lo_, Rat hi_);

    Rat length() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / Rat(2); }

    /// Strict interior membership.
    bool contains(const Rat& x) const { return lo < x && x < hi; }

    /// Containment as open sets: every point of `other` lies in *this.
    bool contains(const OpenInterval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }

    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Canonical finite disjoint union of open intervals in [0,1]: strictly
/// increasing by lo, pairwise disjoint as open sets. Intervals that touch
/// at a single point stay separate components ((0,1/2) and (1/2,1) are two
/// components, never merged) because tree nodes are exactly the open
/// components of each level set.
class IntervalSet {
public:
    IntervalSet() = default;  // the empty set

    const std::vector<OpenInterval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }

    Rat total_length() const;

    /// True iff x lies strictly inside some component.
    bool contains(const Rat& x) const;

    /// Index of the component whose open interior contains x, or -1.
    int component_index(const Rat& x) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

    friend IntervalSet normalize(std::vector<OpenInterval> raw);
    friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
    friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

private:
    struct canonical_tag {};
    IntervalSet(canonical_tag, std::vector<OpenInterval> intervals)
        : intervals_(std::move(intervals)) {}

    std::vector<OpenInterval> intervals_;
};

/// Canonical disjoint form of the union of the raw intervals as an open set.
/// Merging happens only on genuine open overlap (next.lo < current.hi).
IntervalSet normalize(std::vector<OpenInterval> raw);

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// True iff every point of a is in b; equivalent to intersect(a,b) == a.
bool subset_of(const IntervalSet& a, const IntervalSet& b);

// JSON form: {"intervals": [["p/q","r/s"], ...]}. Parsing re-validates and
// re-normalizes.
void to_json(nlohmann::json& j, const OpenInterval& iv);
void to_json(nlohmann::json& j, const IntervalSet& s);
void from_json(const nlohmann::json& j, IntervalSet& s);
OpenInterval interval_from_json(const nlohmann::json& j);

}  // namespace arzela
