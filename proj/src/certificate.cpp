#include "arzela/certificate.hpp"

#include <sstream>

#include "arzela/errors.hpp"
#include "arzela/extraction.hpp"

namespace arzela {

ClosedInterval::ClosedInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw InvalidInput("closed interval needs lo <= hi");
}

bool ClosedInterval::strictly_inside(const ClosedInterval& o) const {
    if (lo < o.lo || o.hi < hi) return false;
    return o.lo < lo || hi < o.hi;
}

std::string to_string(WitnessMode mode) {
    return mode == WitnessMode::NestedClosedIntervals ? "nested-closed-intervals"
                                                      : "fat-path-cluster";
}

WitnessMode witness_mode_from_string(const std::string& s) {
    if (s == "nested-closed-intervals") return WitnessMode::NestedClosedIntervals;
    if (s == "fat-path-cluster") return WitnessMode::FatPathCluster;
    throw InvalidInput("unknown witness mode \"" + s + "\"");
}

void to_json(nlohmann::json& j, const WitnessCertificate& cert) {
    nlohmann::json chain = nlohmann::json::array();
    if (cert.mode == WitnessMode::NestedClosedIntervals) {
        for (const ClosedInterval& c : cert.chain)
            chain.push_back({c.lo.str(), c.hi.str()});
    } else {
        for (const Rat& m : cert.midpoints) chain.push_back(m.str());
    }
    nlohmann::json evidence = nlohmann::json::array();
    for (const LevelEvidence& e : cert.evidence)
        evidence.push_back({{"level", e.level},
                            {"component", {e.component.lo.str(), e.component.hi.str()}}});
    j = nlohmann::json{{"witness", cert.witness.str()},
                       {"mode", to_string(cert.mode)},
                       {"chain", std::move(chain)},
                       {"levels", cert.levels},
                       {"max_index", cert.max_index},
                       {"epsilon", cert.epsilon.str()},
                       {"evidence", std::move(evidence)},
                       {"spec_hash", cert.spec_hash}};
}

WitnessCertificate certificate_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("certificate must be a JSON object");
    for (const char* key :
         {"witness", "mode", "chain", "levels", "max_index", "epsilon", "evidence",
          "spec_hash"})
        if (!j.contains(key))
            throw InvalidInput(std::string("certificate is missing \"") + key + "\"");

    WitnessCertificate cert;
    cert.witness = Rat::parse(j.at("witness").get<std::string>());
    cert.mode = witness_mode_from_string(j.at("mode").get<std::string>());
    cert.epsilon = Rat::parse(j.at("epsilon").get<std::string>());
    cert.levels = j.at("levels").get<int>();
    cert.max_index = j.at("max_index").get<int>();
    cert.spec_hash = j.at("spec_hash").get<std::string>();
    for (const auto& entry : j.at("chain")) {
        if (cert.mode == WitnessMode::NestedClosedIntervals) {
            if (!entry.is_array() || entry.size() != 2)
                throw InvalidInput("chain elements must be [lo, hi] pairs");
            cert.chain.emplace_back(Rat::parse(entry[0].get<std::string>()),
                                    Rat::parse(entry[1].get<std::string>()));
        } else {
            cert.midpoints.push_back(Rat::parse(entry.get<std::string>()));
        }
    }
    for (const auto& entry : j.at("evidence")) {
        const auto& comp = entry.at("component");
        if (!comp.is_array() || comp.size() != 2)
            throw InvalidInput("evidence components must be [lo, hi] pairs");
        cert.evidence.push_back(
            {entry.at("level").get<int>(),
             OpenInterval(Rat::parse(comp[0].get<std::string>()),
                          Rat::parse(comp[1].get<std::string>()))});
    }
    return cert;
}

namespace {

VerificationReport fail(int clause, std::string detail) {
    VerificationReport r;
    r.pass = false;
    r.first_failed_clause = clause;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

VerificationReport verify_certificate(const WitnessCertificate& cert,
                                      const std::vector<IntervalSet>& levels,
                                      const FunctionSequence* seq) {
    const Rat& x = cert.witness;

    if (cert.mode == WitnessMode::NestedClosedIntervals) {
        if (cert.chain.empty()) return fail(1, "certificate has an empty chain");
        for (std::size_t i = 0; i < cert.chain.size(); ++i) {
            if (!cert.chain[i].contains(x))
                return fail(1, "witness " + x.str() + " is outside chain element " +
                                   std::to_string(i + 1));
            if (i > 0 && !cert.chain[i].strictly_inside(cert.chain[i - 1]))
                return fail(1, "chain element " + std::to_string(i + 1) +
                                   " is not strictly inside element " +
                                   std::to_string(i));
        }
    } else if (cert.midpoints.empty()) {
        return fail(1, "certificate has no path midpoints");
    }

    if (cert.levels < 1) return fail(2, "certificate inspects no levels");
    if (static_cast<std::size_t>(cert.levels) > levels.size())
        return fail(2, "certificate names " + std::to_string(cert.levels) +
                           " levels but " + std::to_string(levels.size()) +
                           " were given");
    for (int n = 1; n <= cert.levels; ++n) {
        const IntervalSet& vn = levels[static_cast<std::size_t>(n - 1)];
        int idx = vn.component_index(x);
        if (idx < 0)
            return fail(2, "witness " + x.str() + " is outside level " +
                               std::to_string(n));
        const OpenInterval& found = vn.intervals()[static_cast<std::size_t>(idx)];
        const LevelEvidence* named = nullptr;
        for (const LevelEvidence& e : cert.evidence)
            if (e.level == n) {
                if (named) return fail(2, "duplicate evidence for level " +
                                              std::to_string(n));
                named = &e;
            }
        if (!named) return fail(2, "missing evidence for level " + std::to_string(n));
        if (!(named->component == found))
            return fail(2, "evidence names component (" + named->component.lo.str() +
                               ", " + named->component.hi.str() + ") at level " +
                               std::to_string(n) + " but the witness lies in (" +
                               found.lo.str() + ", " + found.hi.str() + ")");
    }

    VerificationReport r;
    if (seq) {
        r.sequence_checked = true;
        std::vector<int> indices =
            select_subsequence(*seq, cert.epsilon, cert.max_index);
        r.indices_checked = static_cast<int>(indices.size());
        for (int k : indices) {
            StepFunction f = seq->term(k);
            bool in_support = tall_support(f, cert.epsilon, k).set.contains(x);
            bool hit = cert.epsilon < f.evaluate(x);
            if (in_support && !hit) {
                r = fail(3, "term " + std::to_string(k) +
                                " has the witness in its tall support but value " +
                                f.evaluate(x).str() + " <= epsilon");
                r.sequence_checked = true;
                r.indices_checked = static_cast<int>(indices.size());
                return r;
            }
            if (hit) ++r.value_hits;
        }
        if (r.value_hits == 0) {
            int hits = r.value_hits, checked = r.indices_checked;
            r = fail(3, "no selected index sees a value above epsilon at the witness");
            r.sequence_checked = true;
            r.value_hits = hits;
            r.indices_checked = checked;
            return r;
        }
    }

    r.pass = true;
    return r;
}

std::string VerificationReport::render(const WitnessCertificate& cert) const {
    std::ostringstream os;
    os << "certificate verification: " << (pass ? "PASS" : "FAIL") << "\n"
       << "mode: " << to_string(cert.mode) << "\n"
       << "witness: " << cert.witness.str() << "\n"
       << "epsilon: " << cert.epsilon.str() << "\n"
       << "levels: " << cert.levels << "\n"
       << "max_index: " << cert.max_index << "\n";
    if (sequence_checked)
        os << "tall value hits: " << value_hits << " of " << indices_checked
           << " selected indices\n";
    else
        os << "tall value hits: not checked (no sequence given)\n";
    if (!pass)
        os << "first failed clause: " << first_failed_clause << " (" << detail << ")\n";
    return os.str();
}

}  // namespace arzela
