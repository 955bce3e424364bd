#include "arzela/step_function.hpp"

#include <algorithm>

#include "arzela/errors.hpp"

namespace arzela {

StepFunction::StepFunction(std::vector<Rat> breakpoints, std::vector<Rat> values,
                           std::optional<std::vector<Rat>> point_values)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      point_values_(std::move(point_values)) {
    if (breakpoints_.size() < 2)
        throw InvalidInput("step function needs at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw InvalidInput("breakpoints must be strictly increasing");
    if (values_.size() + 1 != breakpoints_.size())
        throw InvalidInput("need exactly one value per piece");
    if (point_values_ && point_values_->size() != breakpoints_.size())
        throw InvalidInput("need exactly one point value per breakpoint");
}

const Rat& StepFunction::point_value(std::size_t i) const {
    if (point_values_) return (*point_values_)[i];
    if (i + 1 == breakpoints_.size()) return values_.back();
    return values_[i];
}

const Rat& StepFunction::evaluate(const Rat& x) const {
    if (x < domain_lo() || domain_hi() < x)
        throw InvalidInput("evaluation point outside domain");
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    if (it != breakpoints_.end() && *it == x) return point_value(i);
    return values_[i - 1];
}

Rat StepFunction::integral() const {
    Rat total;
    for (std::size_t i = 0; i < values_.size(); ++i)
        total += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    return total;
}

Rat StepFunction::min_value() const {
    Rat m = values_.front();
    for (const Rat& v : values_) m = min(m, v);
    if (point_values_)
        for (const Rat& v : *point_values_) m = min(m, v);
    return m;
}

Rat StepFunction::max_value() const {
    Rat m = values_.front();
    for (const Rat& v : values_) m = max(m, v);
    if (point_values_)
        for (const Rat& v : *point_values_) m = max(m, v);
    return m;
}

StepFunction indicator(const Rat& lo, const Rat& hi) {
    Rat zero, one(1);
    if (lo < zero || !(lo < hi) || one < hi)
        throw InvalidInput("indicator needs 0 <= lo < hi <= 1");
    std::vector<Rat> bps{zero};
    std::vector<Rat> vals;
    if (zero < lo) {
        bps.push_back(lo);
        vals.push_back(zero);
    }
    bps.push_back(hi);
    vals.push_back(one);
    if (hi < one) {
        bps.push_back(one);
        vals.push_back(zero);
    }
    return StepFunction(std::move(bps), std::move(vals));
}

StepFunction refine(const StepFunction& f, const std::vector<Rat>& extra) {
    std::vector<Rat> inserts;
    for (const Rat& x : extra)
        if (f.domain_lo() < x && x < f.domain_hi()) inserts.push_back(x);
    std::sort(inserts.begin(), inserts.end());
    inserts.erase(std::unique(inserts.begin(), inserts.end()), inserts.end());

    const auto& ob = f.breakpoints();
    std::vector<Rat> nb;
    std::vector<Rat> nv;
    std::vector<Rat> npv;
    std::size_t j = 0;  // index into inserts
    for (std::size_t i = 0; i + 1 < ob.size(); ++i) {
        nb.push_back(ob[i]);
        if (f.has_explicit_point_values()) npv.push_back(f.point_value(i));
        while (j < inserts.size() && inserts[j] < ob[i + 1]) {
            if (ob[i] < inserts[j]) {
                nb.push_back(inserts[j]);
                nv.push_back(f.values()[i]);
                if (f.has_explicit_point_values()) npv.push_back(f.values()[i]);
            }
            ++j;
        }
        nv.push_back(f.values()[i]);
    }
    nb.push_back(ob.back());
    if (f.has_explicit_point_values()) {
        npv.push_back(f.point_value(ob.size() - 1));
        return StepFunction(std::move(nb), std::move(nv), std::move(npv));
    }
    return StepFunction(std::move(nb), std::move(nv));
}

std::vector<Rat> merged_breakpoints(const StepFunction& f, const StepFunction& g) {
    if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi())
        throw InvalidInput("domain mismatch");
    std::vector<Rat> out;
    std::merge(f.breakpoints().begin(), f.breakpoints().end(),
               g.breakpoints().begin(), g.breakpoints().end(),
               std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void to_json(nlohmann::json& j, const StepFunction& f) {
    auto strs = [](const std::vector<Rat>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const Rat& r : v) a.push_back(r.str());
        return a;
    };
    j = nlohmann::json{{"breakpoints", strs(f.breakpoints())},
                       {"values", strs(f.values())}};
    if (f.has_explicit_point_values()) {
        nlohmann::json a = nlohmann::json::array();
        for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
            a.push_back(f.point_value(i).str());
        j["point_values"] = a;
    }
}

StepFunction step_function_from_json(const nlohmann::json& j) {
    auto rats = [](const nlohmann::json& a) {
        if (!a.is_array()) throw InvalidInput("expected an array of rationals");
        std::vector<Rat> v;
        for (const auto& s : a) v.push_back(Rat::parse(s.get<std::string>()));
        return v;
    };
    if (!j.contains("breakpoints") || !j.contains("values"))
        throw InvalidInput("step function needs breakpoints and values");
    std::optional<std::vector<Rat>> pv;
    if (j.contains("point_values")) pv = rats(j.at("point_values"));
    return StepFunction(rats(j.at("breakpoints")), rats(j.at("values")),
                        std::move(pv));
}

}  // namespace arzela
