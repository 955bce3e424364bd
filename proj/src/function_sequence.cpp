#include "arzela/function_sequence.hpp"

#include <cstdint>
#include <sstream>

#include "arzela/errors.hpp"

namespace arzela {

namespace {

void validate_bounded(const StepFunction& f, const Rat& bound, int n) {
    if (f.min_value() < -bound || bound < f.max_value())
        throw InvalidInput("term " + std::to_string(n) +
                           " violates the declared bound " + bound.str());
}

StepFunction scaled_indicator(const Rat& lo, const Rat& hi, const Rat& height) {
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
    vals.push_back(height);
    if (hi < one) {
        bps.push_back(one);
        vals.push_back(zero);
    }
    return StepFunction(std::move(bps), std::move(vals));
}

std::map<std::string, Rat> resolve_params(const std::string& family,
                                          const std::map<std::string, Rat>& given,
                                          const std::map<std::string, Rat>& defaults) {
    std::map<std::string, Rat> out = defaults;
    for (const auto& [key, value] : given) {
        auto it = out.find(key);
        if (it == out.end())
            throw InvalidInput("family " + family + " has no parameter \"" + key + "\"");
        it->second = value;
    }
    return out;
}

std::string family_description(const std::string& name,
                               const std::map<std::string, Rat>& params) {
    std::string d = "family:" + name;
    for (const auto& [key, value] : params) d += ";" + key + "=" + value.str();
    return d;
}

}  // namespace

FunctionSequence FunctionSequence::explicit_list(std::vector<StepFunction> terms,
                                                 Rat bound, Rat dom_lo, Rat dom_hi) {
    if (terms.empty()) throw InvalidInput("explicit sequence needs at least one term");
    if (!(Rat() < bound)) throw InvalidInput("bound must be positive");
    if (!(dom_lo < dom_hi)) throw InvalidInput("domain must be nondegenerate");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].domain_lo() != dom_lo || terms[i].domain_hi() != dom_hi)
            throw InvalidInput("term " + std::to_string(i + 1) +
                               " is not on the declared domain");
        validate_bounded(terms[i], bound, static_cast<int>(i + 1));
    }
    FunctionSequence seq;
    seq.kind_ = Kind::ExplicitList;
    seq.terms_ = std::move(terms);
    seq.bound_ = std::move(bound);
    seq.dom_lo_ = std::move(dom_lo);
    seq.dom_hi_ = std::move(dom_hi);
    nlohmann::json j;
    to_json(j, seq);
    seq.description_ = "explicit:" + j.dump();
    return seq;
}

FunctionSequence FunctionSequence::lazy(Kind kind, std::string description,
                                        Generator gen, Rat bound, Rat dom_lo,
                                        Rat dom_hi) {
    if (kind == Kind::ExplicitList)
        throw InvalidInput("explicit sequences carry their terms");
    if (!(Rat() < bound)) throw InvalidInput("bound must be positive");
    FunctionSequence seq;
    seq.kind_ = kind;
    seq.gen_ = std::move(gen);
    seq.bound_ = std::move(bound);
    seq.dom_lo_ = std::move(dom_lo);
    seq.dom_hi_ = std::move(dom_hi);
    seq.description_ = std::move(description);
    return seq;
}

std::optional<int> FunctionSequence::term_count() const {
    if (kind_ == Kind::ExplicitList) return static_cast<int>(terms_.size());
    return std::nullopt;
}

StepFunction FunctionSequence::term(int n) const {
    if (n < 1) throw InvalidInput("term indices start at 1");
    if (kind_ == Kind::ExplicitList) {
        if (static_cast<std::size_t>(n) > terms_.size())
            throw InvalidInput("term " + std::to_string(n) + " requested but only " +
                               std::to_string(terms_.size()) + " terms are given");
        return terms_[static_cast<std::size_t>(n - 1)];
    }
    StepFunction f = gen_(n);
    validate_bounded(f, bound_, n);
    return f;
}

FunctionSequence make_family(const std::string& name,
                             const std::map<std::string, Rat>& params) {
    Rat zero, one(1);
    auto require_unit = [&](const Rat& v, const char* what) {
        if (!(zero < v) || one < v)
            throw InvalidInput(std::string(what) + " must lie in (0, 1]");
    };

    std::map<std::string, Rat> p;
    FunctionSequence::Generator gen;
    if (name == "shrinking-bump") {
        p = resolve_params(name, params, {{"height", one}});
        require_unit(p.at("height"), "height");
        Rat h = p.at("height");
        gen = [h](int n) { return scaled_indicator(Rat(), Rat(1, n), h); };
    } else if (name == "sliding-typewriter") {
        p = resolve_params(name, params, {});
        gen = [](int n) {
            long width = 1;  // 2^j with 2^j <= n < 2^{j+1}
            while (2 * width <= n) width *= 2;
            long k = n - width;
            return scaled_indicator(Rat(k, width), Rat(k + 1, width), Rat(1));
        };
    } else if (name == "fixed-plateau") {
        p = resolve_params(name, params,
                           {{"lo", Rat(1, 4)}, {"hi", Rat(3, 4)}, {"height", one}});
        require_unit(p.at("height"), "height");
        if (p.at("lo") < zero || !(p.at("lo") < p.at("hi")) || one < p.at("hi"))
            throw InvalidInput("plateau needs 0 <= lo < hi <= 1");
        Rat lo = p.at("lo"), hi = p.at("hi"), h = p.at("height");
        gen = [lo, hi, h](int) { return scaled_indicator(lo, hi, h); };
    } else if (name == "fat-path-shrinker") {
        p = resolve_params(name, params, {});
        gen = [](int n) {
            return scaled_indicator(Rat(), Rat(1, 2) + Rat(1, n + 1), Rat(1));
        };
    } else {
        throw InvalidInput("unknown family \"" + name + "\"");
    }

    FunctionSequence seq = FunctionSequence::lazy(
        FunctionSequence::Kind::Family, family_description(name, p), std::move(gen),
        one, zero, one);
    seq.family_name_ = name;
    seq.params_ = std::move(p);
    return seq;
}

StepFunction abs_difference(const StepFunction& f, const StepFunction& g) {
    std::vector<Rat> bps = merged_breakpoints(f, g);
    std::vector<Rat> vals;
    std::vector<Rat> pvs;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        Rat mid = (bps[i] + bps[i + 1]) / Rat(2);
        vals.push_back(abs(f.evaluate(mid) - g.evaluate(mid)));
    }
    for (const Rat& b : bps) pvs.push_back(abs(f.evaluate(b) - g.evaluate(b)));
    return StepFunction(std::move(bps), std::move(vals), std::move(pvs));
}

FunctionSequence reduce_to_unit(const FunctionSequence& seq, const StepFunction& limit) {
    if (limit.domain_lo() != seq.domain_lo() || limit.domain_hi() != seq.domain_hi())
        throw InvalidInput("limit is not on the sequence's domain");
    const Rat& c = seq.bound();
    if (limit.min_value() < -c || c < limit.max_value())
        throw InvalidInput("declared bound " + c.str() + " does not bound the limit");

    Rat a = seq.domain_lo();
    Rat width = seq.domain_hi() - seq.domain_lo();
    Rat scale = Rat(1) / (Rat(2) * c);
    auto gen = [seq, limit, a, width, scale](int n) {
        StepFunction d = abs_difference(seq.term(n), limit);
        std::vector<Rat> bps;
        std::vector<Rat> vals;
        std::vector<Rat> pvs;
        for (const Rat& b : d.breakpoints()) bps.push_back((b - a) / width);
        for (const Rat& v : d.values()) vals.push_back(v * scale);
        for (std::size_t i = 0; i < d.breakpoints().size(); ++i)
            pvs.push_back(d.point_value(i) * scale);
        return StepFunction(std::move(bps), std::move(vals), std::move(pvs));
    };
    return FunctionSequence::lazy(FunctionSequence::Kind::Derived,
                                  "derived:reduce-to-unit(" + seq.description() + ")",
                                  std::move(gen), Rat(1), Rat(), Rat(1));
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
    return os.str();
}

std::string source_digest(const FunctionSequence& seq) {
    return fnv1a64_hex(seq.description());
}

void to_json(nlohmann::json& j, const FunctionSequence& seq) {
    if (seq.kind() == FunctionSequence::Kind::Family) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [key, value] : seq.family_params())
            params[key] = value.str();
        j = nlohmann::json{{"family", seq.family_name()}, {"params", params}};
        return;
    }
    if (seq.kind() == FunctionSequence::Kind::Derived)
        throw InvalidInput("derived sequences have no file form");
    nlohmann::json terms = nlohmann::json::array();
    std::optional<int> count = seq.term_count();
    for (int n = 1; n <= *count; ++n) {
        nlohmann::json t;
        to_json(t, seq.term(n));
        terms.push_back(std::move(t));
    }
    j = nlohmann::json{
        {"terms", std::move(terms)},
        {"bound", seq.bound().str()},
        {"domain", {seq.domain_lo().str(), seq.domain_hi().str()}}};
}

FunctionSequence sequence_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("sequence file must be a JSON object");
    if (j.contains("family")) {
        std::map<std::string, Rat> params;
        if (j.contains("params")) {
            if (!j.at("params").is_object())
                throw InvalidInput("params must be an object of rationals");
            for (const auto& [key, value] : j.at("params").items())
                params.emplace(key, Rat::parse(value.get<std::string>()));
        }
        return make_family(j.at("family").get<std::string>(), params);
    }
    if (j.contains("terms")) {
        if (!j.contains("bound") || !j.contains("domain"))
            throw InvalidInput("explicit sequence needs bound and domain");
        std::vector<StepFunction> terms;
        for (const auto& t : j.at("terms")) terms.push_back(step_function_from_json(t));
        const auto& dom = j.at("domain");
        if (!dom.is_array() || dom.size() != 2)
            throw InvalidInput("domain must be a pair of rationals");
        return FunctionSequence::explicit_list(
            std::move(terms), Rat::parse(j.at("bound").get<std::string>()),
            Rat::parse(dom[0].get<std::string>()),
            Rat::parse(dom[1].get<std::string>()));
    }
    throw InvalidInput("sequence file needs a family or terms entry");
}

Rat lower_sum(const SampledFunction& f, const std::vector<Rat>& partition) {
    if (partition.size() < 2 || partition.front() != Rat() ||
        partition.back() != Rat(1))
        throw InvalidInput("partition must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < partition.size(); ++i)
        if (!(partition[i] < partition[i + 1]))
            throw InvalidInput("partition must be strictly increasing");

    auto sample = [&](const Rat& x) {
        Rat v = f.evaluator(x);
        if (v < -f.value_bound || f.value_bound < v)
            throw InvalidInput("evaluator violates its declared value bound at x = " +
                               x.str());
        return v;
    };
    Rat total;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const Rat& lo = partition[i];
        const Rat& hi = partition[i + 1];
        Rat len = hi - lo;
        Rat off = len / Rat(64);
        Rat m = min(min(sample(lo + off), sample(lo + len / Rat(2))),
                    sample(hi - off));
        total += m * len;
    }
    return total;
}

}  // namespace arzela
