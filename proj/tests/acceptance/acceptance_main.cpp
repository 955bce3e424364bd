// Acceptance gate: eight criteria, one PASS/FAIL line each, nonzero exit if
// any fail. Randomized suites run on fixed seeds; end-to-end criteria drive
// the real CLI binary at ARZELA_CLI_PATH.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arzela/certificate.hpp"
#include "arzela/errors.hpp"
#include "arzela/extraction.hpp"
#include "arzela/pipeline.hpp"
#include "arzela/tree.hpp"
#include "support/gen.hpp"
#include "support/grid_oracle.hpp"

namespace {

using namespace arzela;
using Clock = std::chrono::steady_clock;

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s << " s";
    return os.str();
}

std::filesystem::path work_dir() {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "arzela_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const std::string& log_path) {
    std::string cmd =
        std::string(ARZELA_CLI_PATH) + " " + args + " > " + log_path + " 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 1. Tall supports of random step functions with integral above 2*epsilon:
// total length at least epsilon and the exact minimum of f over the set
// above epsilon (piece values on overlapping pieces, point values at
// contained breakpoints).
Criterion tall_support_guarantee() {
    Criterion c{"tall-support guarantee"};
    auto t0 = Clock::now();
    gen::Rng rng(101);
    const Rat eps_cycle[3] = {Rat(1, 16), Rat(1, 8), Rat(1, 4)};
    const int cases = 1000;
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        const Rat& eps = eps_cycle[i % 3];
        StepFunction f = gen::tall_step_function(rng, 12, 7, eps);
        TallSupport ts = tall_support(f, eps, i + 1);
        bool ok = !(ts.set.total_length() < eps);
        const std::vector<Rat>& bps = f.breakpoints();
        const std::vector<Rat>& vals = f.values();
        for (std::size_t j = 0; ok && j < vals.size(); ++j) {
            bool overlaps = false;
            for (const OpenInterval& comp : ts.set.intervals())
                overlaps = overlaps ||
                           max(bps[j], comp.lo) < min(bps[j + 1], comp.hi);
            if (overlaps) ok = eps < vals[j];
        }
        for (const Rat& b : bps)
            if (ok && ts.set.contains(b)) ok = eps < f.evaluate(b);
        if (!ok) ++failures;
    }
    double dt = elapsed(t0);
    c.pass = failures == 0 && dt < 10.0;
    std::ostringstream os;
    os << cases << " cases, " << failures << " failures, " << seconds(dt)
       << " (limit 10 s)";
    c.detail = os.str();
    return c;
}

// 2. Truncating enumerated sets under honest tail bounds: per-level loss at
// most epsilon/2^(n+1), so levels of length >= epsilon keep >= epsilon/2 and
// the losses over a tower sum to at most epsilon/2.
Criterion truncation_budget() {
    Criterion c{"truncation budget"};
    auto t0 = Clock::now();
    gen::Rng rng(211);
    const Rat eps_cycle[2] = {Rat(1, 8), Rat(1, 4)};
    const int reps = 500;
    int failures = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const Rat& eps = eps_cycle[rep % 2];
        Rat total_loss(0);
        bool ok = true;
        for (int n = 1; n <= 10; ++n) {
            StepFunction f = gen::tall_step_function(rng, 10, 7, eps);
            std::vector<OpenInterval> stream = tall_support(f, eps).set.intervals();
            std::vector<Rat> suffix(stream.size() + 1, Rat(0));
            for (std::size_t i = stream.size(); i-- > 0;)
                suffix[i] = suffix[i + 1] + stream[i].length();
            Rat limit = suffix[0];
            Rat budget = eps / Rat(1L << (n + 1));
            std::size_t cursor = 0;
            IntervalSet truncated = truncate_enumerated(
                [&]() -> std::optional<OpenInterval> {
                    if (cursor == stream.size()) return std::nullopt;
                    return stream[cursor++];
                },
                [&](int k) {
                    return static_cast<std::size_t>(k) < stream.size()
                               ? suffix[static_cast<std::size_t>(k)]
                               : Rat(0);
                },
                budget);
            Rat loss = limit - truncated.total_length();
            ok = ok && !(budget < loss);
            ok = ok && !(truncated.total_length() < eps / Rat(2));
            total_loss += loss;
        }
        ok = ok && !(eps / Rat(2) < total_loss);
        if (!ok) ++failures;
    }
    double dt = elapsed(t0);
    c.pass = failures == 0;
    std::ostringstream os;
    os << reps << " towers of 10 levels, " << failures << " failures, "
       << seconds(dt);
    c.detail = os.str();
    return c;
}

// Bounded-width nested levels for the deep synthetic suites: quarters of each
// component survive at random, components beyond the cap are dropped (still
// nested), and every level keeps at least one component.
std::vector<IntervalSet> capped_nested_levels(gen::Rng& rng, int depth,
                                              std::size_t cap) {
    std::vector<IntervalSet> levels;
    levels.push_back(gen::random_set(rng, 3, 4));
    for (int d = 1; d < depth; ++d) {
        std::vector<OpenInterval> next;
        for (const OpenInterval& comp : levels.back().intervals()) {
            if (next.size() >= cap) break;
            Rat w = comp.length() / Rat(4);
            std::size_t before = next.size();
            for (long q = 0; q < 4; ++q)
                if (gen::pick(rng, 0, 9) < 6) {
                    Rat lo = comp.lo + w * Rat(q);
                    next.emplace_back(lo, lo + w);
                }
            if (next.size() == before) {
                Rat lo = comp.lo + w * Rat(gen::pick(rng, 0, 3));
                next.emplace_back(lo, lo + w);
            }
        }
        levels.push_back(arzela::normalize(std::move(next)));
    }
    return levels;
}

Rat min_total_length(const std::vector<IntervalSet>& levels) {
    Rat out = levels.front().total_length();
    for (const IntervalSet& level : levels) out = min(out, level.total_length());
    return out;
}

// 3. Every witness returned by the nested-chain walk or the fat-path
// fallback lies in the exact fold-intersection of its level sets, over deep
// synthetic families and the built-in family pipelines.
Criterion witness_oracle_agreement() {
    Criterion c{"witness-oracle agreement"};
    auto t0 = Clock::now();
    gen::Rng rng(307);
    const std::string hash = "0123456789abcdef";
    int families = 0, witnesses = 0, extracted = 0, disagreements = 0;

    for (int i = 0; i < 340; ++i) {
        int depth = 10 + static_cast<int>(gen::pick(rng, 0, 40));
        std::vector<IntervalSet> levels = capped_nested_levels(rng, depth, 12);
        IntervalTree tree = build_tree(levels, min_total_length(levels));
        prune_terminating(tree, depth);
        IntervalSet target = exact_intersection_oracle(levels);
        ++families;
        try {
            WitnessCertificate cert = extract_witness(tree, depth, depth, hash);
            ++extracted;
            ++witnesses;
            if (!target.contains(cert.witness)) ++disagreements;
        } catch (const InsufficientSplitting&) {
        }
        Rat lambda;
        bool first = true;
        for (const OpenInterval& leaf : tree.live_intervals(depth)) {
            lambda = first ? leaf.length() : min(lambda, leaf.length());
            first = false;
        }
        std::optional<FatPath> path = detect_fat_path(tree, lambda);
        if (first || !path) {
            ++disagreements;
            continue;
        }
        WitnessCertificate cert = fat_path_certificate(tree, *path, lambda, depth, hash);
        ++witnesses;
        if (!target.contains(cert.witness)) ++disagreements;
    }

    const int depths[6] = {10, 17, 25, 33, 41, 50};
    const char* names[3] = {"fixed-plateau", "fat-path-shrinker",
                            "sliding-typewriter"};
    for (int rep = 0; rep < 57; ++rep) {
        int depth = depths[rep % 6];
        for (const char* name : names) {
            RunConfig config;
            config.depth = depth;
            if (std::string(name) == "sliding-typewriter") {
                config.epsilon = Rat(1, 128);
                config.max_index = 63;
            } else {
                config.epsilon = Rat(1, 8);
                config.max_index = depth;
            }
            WitnessOutcome out = run_witness(make_family(name), config);
            ++families;
            if (out.exit_code != ExitVerified || !out.certificate) {
                ++disagreements;
                continue;
            }
            ++witnesses;
            if (!exact_intersection_oracle(out.levels).contains(out.certificate->witness))
                ++disagreements;
        }
    }

    double dt = elapsed(t0);
    c.pass = disagreements == 0 && dt < 30.0;
    std::ostringstream os;
    os << families << " families, " << witnesses << " witnesses (" << extracted
       << " nested-chain), " << disagreements << " disagreements, " << seconds(dt)
       << " (limit 30 s)";
    c.detail = os.str();
    return c;
}

// 4. The CLI certifies the sliding typewriter end to end: at least 12
// surviving indices, a self-verified certificate whose witness sees a value
// above 1/4 at three or more distinct surviving indices, byte-identical
// output across runs. The integral bar 2*(1/4) would keep a single index,
// so the run uses epsilon 1/32; the one-survivor fact is pinned here too.
Criterion end_to_end_typewriter() {
    Criterion c{"end-to-end typewriter certificate"};
    auto t0 = Clock::now();
    std::filesystem::path dir = work_dir();
    std::string cert_path = (dir / "typewriter_cert.json").string();
    std::string again_path = (dir / "typewriter_cert_again.json").string();
    std::string flags = "witness --family sliding-typewriter --eps 1/32 "
                        "--depth 8 --max-index 15 --out ";
    std::vector<std::string> problems;

    int code = run_cli(flags + cert_path, (dir / "typewriter_run.log").string());
    if (code != 0) problems.push_back("exit " + std::to_string(code));

    int hits = 0;
    std::size_t survivors = 0;
    Rat witness;
    try {
        WitnessCertificate cert =
            certificate_from_json(nlohmann::json::parse(slurp(cert_path)));
        witness = cert.witness;
        FunctionSequence seq = make_family("sliding-typewriter");
        std::vector<int> selected = select_subsequence(seq, Rat(1, 32), 15);
        survivors = selected.size();
        if (survivors < 12) problems.push_back("fewer than 12 survivors");
        for (int k : selected)
            if (Rat(1, 4) < seq.term(k).evaluate(cert.witness)) ++hits;
        if (hits < 3) problems.push_back("fewer than 3 value hits");

        RunConfig config;
        config.epsilon = Rat(1, 32);
        config.depth = 8;
        config.max_index = 15;
        WitnessOutcome direct = run_witness(seq, config);
        if (!direct.certificate || direct.certificate->witness != cert.witness)
            problems.push_back("library and CLI witnesses differ");
        else if (!verify_certificate(cert, direct.levels, &seq).pass)
            problems.push_back("certificate fails re-verification");

        if (select_subsequence(seq, Rat(1, 4), 1000).size() != 1)
            problems.push_back("integral bar 1/2 no longer keeps exactly one index");
    } catch (const std::exception& e) {
        problems.push_back(e.what());
    }

    int code2 = run_cli(flags + again_path, (dir / "typewriter_again.log").string());
    if (code2 != 0 || slurp(cert_path) != slurp(again_path))
        problems.push_back("output not deterministic");

    c.pass = problems.empty();
    std::ostringstream os;
    os << "witness " << witness.str() << ", " << survivors << " survivors, "
       << hits << " value hits, " << seconds(elapsed(t0));
    for (const std::string& p : problems) os << "; " << p;
    c.detail = os.str();
    return c;
}

// 5. The convergent family stays negative: exact integrals 1/n for n <= 100
// in the CLI table, and the witness command exits 2 (hypothesis unmet).
Criterion convergent_case_sanity() {
    Criterion c{"convergent-case sanity"};
    auto t0 = Clock::now();
    std::filesystem::path dir = work_dir();
    std::string csv_path = (dir / "bump_check.csv").string();
    std::vector<std::string> problems;

    int code = run_cli("check --family shrinking-bump --max-index 100 "
                       "--format csv --out " + csv_path,
                       (dir / "bump_check.log").string());
    if (code != 0) problems.push_back("check exit " + std::to_string(code));

    std::istringstream csv(slurp(csv_path));
    std::string line;
    std::getline(csv, line);
    if (line != "n,integral,integral_approx")
        problems.push_back("unexpected header: " + line);
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::size_t a = line.find(','), b = line.find(',', a + 1);
        std::string integral = line.substr(a + 1, b - a - 1);
        if (integral != Rat(1, rows).str()) {
            problems.push_back("row " + std::to_string(rows) + " integral " + integral);
            break;
        }
    }
    if (rows != 100) problems.push_back(std::to_string(rows) + " rows");

    int code2 = run_cli("witness --family shrinking-bump --eps 1/8 --max-index 100",
                        (dir / "bump_witness.log").string());
    if (code2 != 2) problems.push_back("witness exit " + std::to_string(code2));

    double dt = elapsed(t0);
    c.pass = problems.empty() && dt < 1.0;
    std::ostringstream os;
    os << "100 exact integrals, witness exit 2, " << seconds(dt) << " (limit 1 s)";
    for (const std::string& p : problems) os << "; " << p;
    c.detail = os.str();
    return c;
}

// 6. The fat-path branch at lambda = 1/2 over 50 levels of the shrinking
// half-plateaus: a path exists and the cluster witness belongs to every
// level set exactly.
Criterion fat_path_branch() {
    Criterion c{"fat-path branch"};
    auto t0 = Clock::now();
    FunctionSequence seq = make_family("fat-path-shrinker");
    const Rat eps(1, 8);
    const int depth = 50;
    std::vector<std::string> problems;

    std::vector<TallSupport> supports;
    for (int k : select_subsequence(seq, eps, depth))
        supports.push_back(tall_support(seq.term(k), eps, k));
    std::vector<IntervalSet> levels;
    for (TailUnion& t : build_tail_unions(supports, depth))
        levels.push_back(std::move(t.set));

    IntervalTree tree = build_tree(levels, eps);
    prune_terminating(tree, depth);
    std::optional<FatPath> path = detect_fat_path(tree, Rat(1, 2));
    Rat witness;
    int member = 0;
    if (!path) {
        problems.push_back("no fat path at lambda 1/2");
    } else {
        WitnessCertificate cert =
            fat_path_certificate(tree, *path, Rat(1, 2), depth, source_digest(seq));
        witness = cert.witness;
        if (cert.witness != Rat(5, 12)) problems.push_back("witness moved");
        for (const IntervalSet& level : levels)
            if (level.contains(cert.witness)) ++member;
        if (member != depth) problems.push_back("membership failed");
        if (!verify_certificate(cert, levels, &seq).pass)
            problems.push_back("certificate fails verification");
    }

    c.pass = problems.empty();
    std::ostringstream os;
    os << "witness " << witness.str() << " in " << member << " of " << depth
       << " levels, " << seconds(elapsed(t0));
    for (const std::string& p : problems) os << "; " << p;
    c.detail = os.str();
    return c;
}

// 7. Pruning equals brute-force reachability to the horizon and the split
// classification equals brute-force descendant counting, on random trees.
Criterion pruning_correctness() {
    Criterion c{"pruning correctness"};
    auto t0 = Clock::now();
    gen::Rng rng(701);
    const int reps = 220;
    int disagreements = 0;
    for (int rep = 0; rep < reps; ++rep) {
        int depth = 3 + static_cast<int>(gen::pick(rng, 0, 5));
        std::vector<IntervalSet> levels = gen::random_nested_levels(rng, depth);
        Rat eps = min_total_length(levels);
        IntervalTree tree = build_tree(levels, eps);
        IntervalTree shape = build_tree(levels, eps);
        int horizon = 1 + static_cast<int>(gen::pick(rng, 0, depth - 1));
        prune_terminating(tree, horizon);

        std::function<bool(NodeId)> reaches = [&](NodeId id) {
            const TreeNode& n = shape.node(id);
            if (n.depth >= horizon) return true;
            for (NodeId ch : n.children)
                if (reaches(ch)) return true;
            return false;
        };
        bool ok = true;
        for (NodeId id = 0; id < tree.node_count(); ++id)
            ok = ok && (tree.node(id).status == NodeStatus::Live) == reaches(id);

        auto at_horizon = [&](NodeId id) {
            int count = 0;
            Rat length(0);
            std::vector<NodeId> stack{id};
            while (!stack.empty()) {
                NodeId cur = stack.back();
                stack.pop_back();
                const TreeNode& n = tree.node(cur);
                if (n.status != NodeStatus::Live) continue;
                if (n.depth == horizon) {
                    ++count;
                    length += n.interval.length();
                    continue;
                }
                for (NodeId ch : n.children) stack.push_back(ch);
            }
            return std::pair<int, Rat>(count, length);
        };
        std::vector<SplitClassification> cls = classify_splitting(tree, horizon);
        ok = ok && static_cast<int>(cls.size()) == horizon;
        for (int level = 1; ok && level <= horizon; ++level) {
            std::vector<NodeId> splitting, single;
            Rat o_length(0);
            for (NodeId id : tree.level_ids(level)) {
                if (tree.node(id).status != NodeStatus::Live) continue;
                auto [count, length] = at_horizon(id);
                if (count >= 2) splitting.push_back(id);
                if (count == 1) {
                    single.push_back(id);
                    o_length += length;
                }
            }
            const SplitClassification& got = cls[static_cast<std::size_t>(level - 1)];
            ok = got.level == level && got.horizon == horizon &&
                 got.splitting == splitting && got.single_chain == single &&
                 got.o_descendant_length == o_length;
        }
        if (!ok) ++disagreements;
    }
    c.pass = disagreements == 0;
    std::ostringstream os;
    os << reps << " trees, " << disagreements << " disagreements, "
       << seconds(elapsed(t0));
    c.detail = os.str();
    return c;
}

// 8. The interval-set kernel: exact inclusion-exclusion on random pairs and
// membership agreement with the denominator-bounded grid oracle.
Criterion interval_algebra_kernel() {
    Criterion c{"interval-algebra kernel"};
    auto t0 = Clock::now();
    gen::Rng rng(809);
    const int pairs = 10000;
    int algebra_failures = 0;
    for (int i = 0; i < pairs; ++i) {
        IntervalSet a = normalize(
            gen::random_messy_intervals(rng, 1 + static_cast<int>(gen::pick(rng, 0, 5)), 9));
        IntervalSet b = normalize(
            gen::random_messy_intervals(rng, 1 + static_cast<int>(gen::pick(rng, 0, 5)), 9));
        Rat lhs = set_union(a, b).total_length() + intersect(a, b).total_length();
        if (lhs != a.total_length() + b.total_length()) ++algebra_failures;
    }

    const int sets = 1000;
    int grid_failures = 0;
    for (int i = 0; i < sets; ++i) {
        std::vector<OpenInterval> raw = gen::random_messy_intervals(
            rng, 1 + static_cast<int>(gen::pick(rng, 0, 5)), 9);
        IntervalSet s = normalize(raw);
        if (!grid::memberships_agree(s.intervals(), raw, 1000)) ++grid_failures;
    }

    c.pass = algebra_failures == 0 && grid_failures == 0;
    std::ostringstream os;
    os << pairs << " union/intersection pairs (" << algebra_failures
       << " failures), " << sets << " sets against the q<=1000 grid ("
       << grid_failures << " failures), " << seconds(elapsed(t0));
    c.detail = os.str();
    return c;
}

}  // namespace

int main() {
    Criterion (*criteria[])() = {
        tall_support_guarantee,   truncation_budget,  witness_oracle_agreement,
        end_to_end_typewriter,    convergent_case_sanity, fat_path_branch,
        pruning_correctness,      interval_algebra_kernel,
    };
    int failed = 0;
    for (auto* criterion : criteria) {
        Criterion c = criterion();
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << std::left
                  << std::setw(34) << c.name << "  " << c.detail << "\n";
        if (!c.pass) ++failed;
    }
    if (failed) {
        std::cout << failed << " of 8 criteria failed\n";
        return 1;
    }
    std::cout << "all 8 criteria passed\n";
    return 0;
}
