#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "arzela/errors.hpp"
#include "arzela/pipeline.hpp"

namespace {

using namespace arzela;

struct Options {
    std::string family;
    std::string spec_path;
    std::string out_path;
    std::string format = "json";
    std::string dump_tree_path;
    std::string eps = "1/8";
    std::vector<std::string> eps_grid;
    std::vector<std::string> probes;
    int depth = 10;
    int max_index = 20;
    int horizon = 0;
    long seed = 0;
};

FunctionSequence resolve_sequence(const Options& opt) {
    if (opt.family.empty() == opt.spec_path.empty())
        throw InvalidInput("give exactly one of --family or --spec");
    if (!opt.family.empty()) return make_family(opt.family);
    return load_sequence_file(opt.spec_path);
}

RunConfig build_config(const Options& opt) {
    RunConfig config;
    config.epsilon = Rat::parse(opt.eps);
    config.depth = opt.depth;
    config.max_index = opt.max_index;
    config.horizon = opt.horizon;
    for (const std::string& p : opt.probes) config.probes.push_back(Rat::parse(p));
    config.want_tree_dump = !opt.dump_tree_path.empty();
    return config;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << content;
}

void emit(const Options& opt, const std::string& content, const char* what) {
    if (opt.out_path.empty()) {
        std::cout << content;
        return;
    }
    write_text(opt.out_path, content);
    std::cout << "wrote " << what << " to " << opt.out_path << "\n";
}

int do_witness(const Options& opt) {
    FunctionSequence seq = resolve_sequence(opt);
    WitnessOutcome out = run_witness(seq, build_config(opt));
    std::cout << out.message << "\n";
    if (out.verification && out.certificate)
        std::cout << out.verification->render(*out.certificate);
    if (out.tree_json) {
        write_text(opt.dump_tree_path, out.tree_json->dump(2) + "\n");
        std::cout << "wrote tree dump to " << opt.dump_tree_path << "\n";
    }
    if (out.certificate) {
        nlohmann::json j;
        to_json(j, *out.certificate);
        emit(opt, j.dump(2) + "\n", "certificate");
    }
    return out.exit_code;
}

int do_check(const Options& opt) {
    FunctionSequence seq = resolve_sequence(opt);
    CheckReport report = run_check(seq, build_config(opt));
    std::cout << "terms: " << report.rows.size() << "\n"
              << "trending to zero: " << (report.trending_to_zero ? "yes" : "no")
              << "\n";
    for (std::size_t i = 0; i < report.probes.size(); ++i)
        std::cout << "probe " << report.probes[i].str() << " recurrent above "
                  << report.epsilon.str() << ": "
                  << (report.probe_recurrent[i] ? "yes" : "no") << "\n";
    if (opt.format == "csv")
        emit(opt, check_report_csv(report), "table");
    else
        emit(opt, check_report_json(report).dump(2) + "\n", "table");
    return 0;
}

int do_intersect(const Options& opt) {
    if (opt.spec_path.empty())
        throw InvalidInput("intersect needs --spec with an interval-set file");
    IntersectOutcome out = run_intersect(load_interval_sets_file(opt.spec_path));
    std::cout << "components: " << out.intersection.size()
              << ", total length: " << out.total_length.str() << "\n";
    if (opt.format == "csv")
        emit(opt, intersect_csv(out), "intersection");
    else
        emit(opt, intersect_json(out).dump(2) + "\n", "intersection");
    return 0;
}

int do_scan(const Options& opt) {
    FunctionSequence seq = resolve_sequence(opt);
    std::vector<Rat> grid;
    for (const std::string& e : opt.eps_grid) grid.push_back(Rat::parse(e));
    std::vector<ScanRow> rows = run_scan(seq, grid, build_config(opt));
    for (const ScanRow& row : rows) {
        std::cout << "eps " << row.epsilon.str() << ": " << row.survivors
                  << " survivors, ";
        if (row.witness)
            std::cout << "witness " << row.witness->str() << " ("
                      << to_string(*row.mode) << ")";
        else
            std::cout << "no witness (exit " << row.exit_code << ")";
        std::cout << "\n";
    }
    if (opt.format == "csv")
        emit(opt, scan_csv(rows), "table");
    else
        emit(opt, scan_json(rows).dump(2) + "\n", "table");
    return 0;
}

int do_demo() {
    std::cout << "-- shrinking-bump: indicator of (0, 1/n); integrals 1/n --\n";
    {
        RunConfig config;
        config.max_index = 10;
        CheckReport report = run_check(make_family("shrinking-bump"), config);
        std::cout << "integrals:";
        for (const CheckRow& row : report.rows) std::cout << " " << row.integral.str();
        std::cout << "\ntrending to zero: "
                  << (report.trending_to_zero ? "yes" : "no") << "\n";
        config.max_index = 100;
        WitnessOutcome w = run_witness(make_family("shrinking-bump"), config);
        std::cout << "witness at eps 1/8: exit " << w.exit_code << " (" << w.message
                  << ")\n\n";
    }
    std::cout << "-- fixed-plateau: indicator of (1/4, 3/4); no convergence --\n";
    {
        RunConfig config;
        config.depth = 5;
        config.max_index = 5;
        WitnessOutcome w = run_witness(make_family("fixed-plateau"), config);
        std::cout << w.message << "\n\n";
    }
    std::cout << "-- sliding-typewriter: integrals shrink, no pointwise limit --\n";
    {
        RunConfig config;
        config.max_index = 15;
        config.probes.push_back(Rat(1, 3));
        CheckReport report = run_check(make_family("sliding-typewriter"), config);
        std::cout << "integrals:";
        for (const CheckRow& row : report.rows) std::cout << " " << row.integral.str();
        std::cout << "\ntrending to zero: "
                  << (report.trending_to_zero ? "yes" : "no")
                  << "; probe 1/3 recurrent above 1/8: "
                  << (report.probe_recurrent[0] ? "yes" : "no") << "\n";
        config.epsilon = Rat(1, 32);
        config.depth = 8;
        config.horizon = 8;
        WitnessOutcome w = run_witness(make_family("sliding-typewriter"), config);
        std::cout << "witness at eps 1/32, depth 8: " << w.message << "\n\n";
    }
    std::cout << "-- fat-path-shrinker: indicator of (0, 1/2 + 1/(n+1)) --\n";
    {
        RunConfig config;
        WitnessOutcome w = run_witness(make_family("fat-path-shrinker"), config);
        std::cout << w.message << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact interval arithmetic for bounded step-function sequences: "
                 "witness extraction, certificate checking, convergence tables"};
    app.require_subcommand(1);

    Options opt;
    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--family", opt.family,
                        "Built-in family: shrinking-bump, sliding-typewriter, "
                        "fixed-plateau, fat-path-shrinker");
        cmd->add_option("--spec", opt.spec_path, "JSON input file");
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "Output path (default: stdout)");
        cmd->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_run = [&](CLI::App* cmd) {
        cmd->add_option("--eps", opt.eps, "Rational threshold p/q in (0, 1/2)");
        cmd->add_option("--depth", opt.depth, "Levels to inspect (default 10)");
        cmd->add_option("--max-index", opt.max_index,
                        "Terms to consume (default 20)");
        cmd->add_option("--horizon", opt.horizon,
                        "Finite proxy for sufficiently large depth (default: depth)");
    };

    CLI::App* witness =
        app.add_subcommand("witness", "Extract and self-verify a witness certificate");
    add_input(witness);
    add_run(witness);
    add_output(witness);
    witness->add_option("--dump-tree", opt.dump_tree_path,
                        "Also write the pruned interval tree to this path");

    CLI::App* check =
        app.add_subcommand("check", "Tabulate exact integrals and probe values");
    add_input(check);
    check->add_option("--eps", opt.eps, "Rational threshold p/q in (0, 1/2)");
    check->add_option("--max-index", opt.max_index, "Terms to consume (default 20)");
    check->add_option("--probe", opt.probes, "Probe point p/q in [0,1] (repeatable)");
    add_output(check);

    CLI::App* intersect =
        app.add_subcommand("intersect", "Exact intersection of interval sets");
    intersect->add_option("--spec", opt.spec_path,
                          "JSON file with an array of interval sets");
    add_output(intersect);

    CLI::App* scan = app.add_subcommand(
        "scan-epsilon", "Run the witness pipeline over an epsilon grid");
    add_input(scan);
    scan->add_option("--eps", opt.eps_grid, "Grid point p/q (repeatable)")
        ->required();
    scan->add_option("--depth", opt.depth, "Levels to inspect (default 10)");
    scan->add_option("--max-index", opt.max_index, "Terms to consume (default 20)");
    scan->add_option("--horizon", opt.horizon,
                     "Finite proxy for sufficiently large depth (default: depth)");
    add_output(scan);

    CLI::App* demo =
        app.add_subcommand("demo", "Walk the four built-in families end to end");

    app.add_option("--seed", opt.seed,
                   "Seed for randomized suites (reserved; pipelines are "
                   "deterministic)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (witness->parsed()) return do_witness(opt);
        if (check->parsed()) return do_check(opt);
        if (intersect->parsed()) return do_intersect(opt);
        if (scan->parsed()) return do_scan(opt);
        if (demo->parsed()) return do_demo();
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis not met: " << e.what() << "\n";
        return ExitHypothesisUnmet;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitError;
    }
    return ExitError;
}
