#include "arzela/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "arzela/errors.hpp"
#include "arzela/log.hpp"

namespace arzela {

namespace {

void validate_epsilon(const Rat& epsilon) {
    if (!(Rat() < epsilon) || !(Rat(2) * epsilon < Rat(1)))
        throw InvalidInput("epsilon must satisfy 0 < epsilon and 2*epsilon < 1");
}

void validate_probes(const std::vector<Rat>& probes) {
    for (const Rat& p : probes)
        if (p < Rat() || Rat(1) < p)
            throw InvalidInput("probe points must lie in [0,1]");
}

int resolved_horizon(const RunConfig& config) {
    return config.horizon == 0 ? config.depth : config.horizon;
}

void validate_shape(const RunConfig& config) {
    if (config.depth < 1) throw InvalidInput("depth must be at least 1");
    if (config.max_index < config.depth)
        throw InvalidInput("max_index must be at least the depth");
    int horizon = resolved_horizon(config);
    if (horizon < 1 || horizon > config.depth)
        throw InvalidInput("horizon must lie between 1 and the depth");
}

}  // namespace

WitnessOutcome run_witness(const FunctionSequence& seq, const RunConfig& config) {
    validate_epsilon(config.epsilon);
    validate_shape(config);
    int horizon = resolved_horizon(config);

    WitnessOutcome out;
    out.selected = select_subsequence(seq, config.epsilon, config.max_index);
    log_info("witness: " + std::to_string(out.selected.size()) + " of " +
             std::to_string(config.max_index) + " terms have integral above 2*eps");
    if (static_cast<int>(out.selected.size()) < config.depth) {
        out.exit_code = ExitHypothesisUnmet;
        out.message = "hypothesis not met at epsilon " + config.epsilon.str() +
                      ": only " + std::to_string(out.selected.size()) + " of the first " +
                      std::to_string(config.max_index) +
                      " terms have integral above 2*epsilon = " +
                      (Rat(2) * config.epsilon).str() + ", but depth " +
                      std::to_string(config.depth) + " levels are required";
        return out;
    }

    std::vector<TallSupport> supports;
    for (int k : out.selected)
        supports.push_back(tall_support(seq.term(k), config.epsilon, k));
    std::vector<TailUnion> tails = build_tail_unions(supports, config.depth);
    out.levels.reserve(tails.size());
    for (TailUnion& t : tails) out.levels.push_back(std::move(t.set));

    IntervalTree tree = build_tree(out.levels, config.epsilon);
    prune_terminating(tree, horizon);
    out.classification = classify_splitting(tree, horizon);
    out.discard = discard_single_chains(tree, horizon, config.epsilon / Rat(4));
    log_info(out.discard->committed
                 ? "single-chain discard committed: " +
                       std::to_string(out.discard->discarded) + " nodes dropped, " +
                       std::to_string(out.discard->remarked) + " ancestors re-marked"
                 : "single-chain discard skipped: per-level floor not witnessed");
    for (const std::string& note : out.discard->notes) log_debug(note);

    std::string hash = source_digest(seq);
    std::optional<WitnessCertificate> cert;
    try {
        cert = extract_witness(tree, horizon, config.max_index, hash);
    } catch (const InsufficientSplitting& e) {
        log_info(std::string("nested-chain walk: ") + e.what());
        Rat lambda = config.epsilon / Rat(2);
        std::optional<FatPath> fp = detect_fat_path(tree, lambda);
        if (fp) {
            cert = fat_path_certificate(tree, *fp, lambda, config.max_index, hash);
        }
    }
    if (config.want_tree_dump) out.tree_json = dump_tree(tree);

    if (!cert) {
        out.exit_code = ExitHypothesisUnmet;
        out.message = "no certificate at this horizon: neither a three-descendant "
                      "chain nor a fat path at lambda = " +
                      (config.epsilon / Rat(2)).str() + " survives to depth " +
                      std::to_string(horizon);
        return out;
    }

    out.verification = verify_certificate(*cert, out.levels, &seq);
    out.certificate = std::move(cert);
    if (out.verification->pass) {
        out.exit_code = ExitVerified;
        out.message = "verified witness " + out.certificate->witness.str() + " (" +
                      to_string(out.certificate->mode) + ", " +
                      std::to_string(out.verification->value_hits) + " of " +
                      std::to_string(out.verification->indices_checked) +
                      " selected indices exceed epsilon there)";
    } else {
        out.exit_code = ExitError;
        out.message = "self-verification failed: " + out.verification->detail;
    }
    return out;
}

CheckReport run_check(const FunctionSequence& seq, const RunConfig& config) {
    validate_epsilon(config.epsilon);
    validate_probes(config.probes);
    if (config.max_index < 1) throw InvalidInput("max_index must be at least 1");

    CheckReport report;
    report.probes = config.probes;
    report.epsilon = config.epsilon;
    int m = config.max_index;
    for (int n = 1; n <= m; ++n) {
        StepFunction f = seq.term(n);
        CheckRow row;
        row.n = n;
        row.integral = f.integral();
        for (const Rat& p : config.probes) row.probe_values.push_back(f.evaluate(p));
        report.rows.push_back(std::move(row));
    }

    int quarter = (m + 3) / 4;
    Rat first_min = report.rows.front().integral;
    Rat last_max = report.rows.back().integral;
    for (int i = 0; i < quarter; ++i) {
        first_min = min(first_min, report.rows[static_cast<std::size_t>(i)].integral);
        last_max =
            max(last_max, report.rows[static_cast<std::size_t>(m - 1 - i)].integral);
    }
    report.trending_to_zero = last_max < first_min;

    int half = (m + 1) / 2;
    for (std::size_t pi = 0; pi < config.probes.size(); ++pi) {
        bool first_half = false;
        bool second_half = false;
        for (int i = 0; i < m; ++i) {
            bool hit = config.epsilon <
                       report.rows[static_cast<std::size_t>(i)].probe_values[pi];
            (i < half ? first_half : second_half) |= hit;
        }
        report.probe_recurrent.push_back(first_half && second_half);
    }
    return report;
}

std::vector<ScanRow> run_scan(const FunctionSequence& seq, const std::vector<Rat>& grid,
                              const RunConfig& config) {
    if (grid.empty()) throw InvalidInput("scan needs a nonempty epsilon grid");
    validate_shape(config);
    std::vector<ScanRow> rows;
    for (const Rat& eps : grid) {
        validate_epsilon(eps);
        RunConfig per_eps = config;
        per_eps.epsilon = eps;
        ScanRow row;
        row.epsilon = eps;
        row.survivors =
            static_cast<int>(select_subsequence(seq, eps, config.max_index).size());
        WitnessOutcome w = run_witness(seq, per_eps);
        row.exit_code = w.exit_code;
        if (w.certificate) {
            row.witness = w.certificate->witness;
            row.mode = w.certificate->mode;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IntersectOutcome run_intersect(const std::vector<IntervalSet>& sets) {
    IntersectOutcome out;
    out.intersection = exact_intersection_oracle(sets);
    out.total_length = out.intersection.total_length();
    return out;
}

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput("cannot parse " + path + ": " + e.what());
    }
}

}  // namespace

FunctionSequence load_sequence_file(const std::string& path) {
    return sequence_from_json(parse_file(path));
}

std::vector<IntervalSet> load_interval_sets_file(const std::string& path) {
    nlohmann::json j = parse_file(path);
    const nlohmann::json* arr = &j;
    if (j.is_object() && j.contains("sets")) arr = &j.at("sets");
    if (!arr->is_array())
        throw InvalidInput(path + " must hold an array of interval sets");
    std::vector<IntervalSet> sets;
    for (const auto& entry : *arr) {
        IntervalSet s;
        from_json(entry, s);
        sets.push_back(std::move(s));
    }
    return sets;
}

nlohmann::json check_report_json(const CheckReport& report) {
    nlohmann::json probes = nlohmann::json::array();
    for (const Rat& p : report.probes) probes.push_back(p.str());
    nlohmann::json rows = nlohmann::json::array();
    for (const CheckRow& row : report.rows) {
        nlohmann::json values = nlohmann::json::array();
        nlohmann::json approx = nlohmann::json::array();
        for (const Rat& v : row.probe_values) {
            values.push_back(v.str());
            approx.push_back(v.approx());
        }
        rows.push_back({{"n", row.n},
                        {"integral", row.integral.str()},
                        {"integral_approx", row.integral.approx()},
                        {"probe_values", std::move(values)},
                        {"probe_values_approx", std::move(approx)}});
    }
    return nlohmann::json{{"epsilon", report.epsilon.str()},
                          {"probes", std::move(probes)},
                          {"trending_to_zero", report.trending_to_zero},
                          {"probe_recurrent", report.probe_recurrent},
                          {"rows", std::move(rows)}};
}

std::string check_report_csv(const CheckReport& report) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "n,integral,integral_approx";
    for (const Rat& p : report.probes)
        os << ",value_at_" << p.str() << ",value_at_" << p.str() << "_approx";
    os << "\n";
    for (const CheckRow& row : report.rows) {
        os << row.n << "," << row.integral.str() << "," << row.integral.approx();
        for (const Rat& v : row.probe_values) os << "," << v.str() << "," << v.approx();
        os << "\n";
    }
    return os.str();
}

nlohmann::json scan_json(const std::vector<ScanRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const ScanRow& row : rows) {
        nlohmann::json entry{{"epsilon", row.epsilon.str()},
                             {"epsilon_approx", row.epsilon.approx()},
                             {"survivors", row.survivors},
                             {"exit", row.exit_code}};
        entry["witness"] = row.witness ? nlohmann::json(row.witness->str())
                                       : nlohmann::json(nullptr);
        entry["mode"] =
            row.mode ? nlohmann::json(to_string(*row.mode)) : nlohmann::json(nullptr);
        out.push_back(std::move(entry));
    }
    return nlohmann::json{{"rows", std::move(out)}};
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "epsilon,epsilon_approx,survivors,exit,witness,witness_approx,mode\n";
    for (const ScanRow& row : rows) {
        os << row.epsilon.str() << "," << row.epsilon.approx() << "," << row.survivors
           << "," << row.exit_code << ",";
        if (row.witness) os << row.witness->str();
        os << ",";
        if (row.witness) os << row.witness->approx();
        os << ",";
        if (row.mode) os << to_string(*row.mode);
        os << "\n";
    }
    return os.str();
}

nlohmann::json intersect_json(const IntersectOutcome& outcome) {
    nlohmann::json set;
    to_json(set, outcome.intersection);
    return nlohmann::json{{"intersection", std::move(set)},
                          {"total_length", outcome.total_length.str()},
                          {"total_length_approx", outcome.total_length.approx()}};
}

std::string intersect_csv(const IntersectOutcome& outcome) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "lo,hi,lo_approx,hi_approx\n";
    for (const OpenInterval& iv : outcome.intersection.intervals())
        os << iv.lo.str() << "," << iv.hi.str() << "," << iv.lo.approx() << ","
           << iv.hi.approx() << "\n";
    return os.str();
}

}  // namespace arzela
