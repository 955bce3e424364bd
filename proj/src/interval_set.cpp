#include "arzela/interval_set.hpp"

#include <algorithm>

#include "arzela/errors.hpp"

namespace arzela {

OpenInterval::OpenInterval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.sign() < 0 || hi > Rat(1))
        throw InvalidInput("open interval (" + lo.str() + "," + hi.str() +
                           ") leaves the unit interval");
    if (!(lo < hi))
        throw InvalidInput("degenerate open interval (" + lo.str() + "," + hi.str() +
                           "): lo must be strictly below hi");
}

Rat IntervalSet::total_length() const {
    Rat sum;
    for (const auto& iv : intervals_) sum += iv.length();
    return sum;
}

int IntervalSet::component_index(const Rat& x) const {
    // Last component with lo < x, if any; x is inside iff also x < hi.
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                               [](const OpenInterval& iv, const Rat& v) { return iv.lo < v; });
    if (it == intervals_.begin()) return -1;
    --it;
    if (x < it->hi) return static_cast<int>(it - intervals_.begin());
    return -1;
}

bool IntervalSet::contains(const Rat& x) const { return component_index(x) >= 0; }

IntervalSet normalize(std::vector<OpenInterval> raw) {
    if (raw.empty()) return IntervalSet{};
    std::sort(raw.begin(), raw.end(), [](const OpenInterval& a, const OpenInterval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    std::vector<OpenInterval> out;
    out.reserve(raw.size());
    OpenInterval cur = raw.front();
    for (std::size_t i = 1; i < raw.size(); ++i) {
        const OpenInterval& next = raw[i];
        if (next.lo < cur.hi) {
            // Genuine open overlap; touching at a point does not merge.
            if (cur.hi < next.hi) cur.hi = next.hi;
        } else {
            out.push_back(cur);
            cur = next;
        }
    }
    out.push_back(cur);
    return IntervalSet(IntervalSet::canonical_tag{}, std::move(out));
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<OpenInterval> raw = a.intervals_;
    raw.insert(raw.end(), b.intervals_.begin(), b.intervals_.end());
    return normalize(std::move(raw));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    std::vector<OpenInterval> out;
    std::size_t i = 0, j = 0;
    while (i < a.intervals_.size() && j < b.intervals_.size()) {
        const OpenInterval& x = a.intervals_[i];
        const OpenInterval& y = b.intervals_[j];
        const Rat& lo = max(x.lo, y.lo);
        const Rat& hi = min(x.hi, y.hi);
        if (lo < hi) out.emplace_back(lo, hi);
        if (x.hi < y.hi)
            ++i;
        else
            ++j;
    }
    return IntervalSet(IntervalSet::canonical_tag{}, std::move(out));
}

bool subset_of(const IntervalSet& a, const IntervalSet& b) {
    std::size_t j = 0;
    const auto& bs = b.intervals();
    for (const auto& iv : a.intervals()) {
        while (j < bs.size() && bs[j].hi <= iv.lo) ++j;
        if (j == bs.size() || !bs[j].contains(iv)) return false;
    }
    return true;
}

void to_json(nlohmann::json& j, const OpenInterval& iv) {
    j = nlohmann::json::array({iv.lo.str(), iv.hi.str()});
}

void to_json(nlohmann::json& j, const IntervalSet& s) {
    j = nlohmann::json{{"intervals", s.intervals()}};
}

OpenInterval interval_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw InvalidInput("interval must be a two-element array of rational strings");
    return OpenInterval(Rat::parse(j[0].get<std::string>()),
                        Rat::parse(j[1].get<std::string>()));
}

void from_json(const nlohmann::json& j, IntervalSet& s) {
    if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_array())
        throw InvalidInput("interval set must be {\"intervals\": [[\"p/q\",\"r/s\"], ...]}");
    std::vector<OpenInterval> raw;
    raw.reserve(j["intervals"].size());
    for (const auto& e : j["intervals"]) raw.push_back(interval_from_json(e));
    s = normalize(std::move(raw));
}

}  // namespace arzela
