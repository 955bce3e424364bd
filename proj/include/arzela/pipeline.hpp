#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "arzela/extraction.hpp"
#include "arzela/tree.hpp"

namespace arzela {

/// Process exit codes, a stable contract: 0 a verified certificate, 2 the
/// working hypothesis was not met at the given parameters (or no certificate
/// exists at this horizon), 1 a genuine error.
enum ExitCode : int { ExitVerified = 0, ExitError = 1, ExitHypothesisUnmet = 2 };

/// Shared knobs of the pipeline commands. horizon 0 means "use depth".
struct RunConfig {
    Rat epsilon = Rat(1, 8);
    int depth = 10;
    int max_index = 20;
    int horizon = 0;
    std::vector<Rat> probes;
    bool want_tree_dump = false;
};

/// Everything a witness run produced: the exit code with its explanation,
/// and, on success, the self-verified certificate plus the inspected levels
/// and the pruning telemetry.
struct WitnessOutcome {
    int exit_code = ExitError;
    std::string message;
    std::vector<int> selected;
    std::vector<IntervalSet> levels;
    std::optional<WitnessCertificate> certificate;
    std::optional<VerificationReport> verification;
    std::vector<SplitClassification> classification;
    std::optional<DiscardReport> discard;
    std::optional<nlohmann::json> tree_json;
};

/// select -> tall supports -> tail unions -> tree -> prune/classify/discard
/// -> witness (nested chain, fat-path fallback at lambda = epsilon/2)
/// -> self-verification.
WitnessOutcome run_witness(const FunctionSequence& seq, const RunConfig& config);

struct CheckRow {
    int n = 0;
    Rat integral;
    std::vector<Rat> probe_values;  // parallel to CheckReport::probes
};

/// Convergence table over terms 1..max_index. trending_to_zero compares the
/// last quarter's largest integral against the first quarter's smallest;
/// a probe is recurrent when both halves of the index range see a value
/// above epsilon there.
struct CheckReport {
    std::vector<CheckRow> rows;
    std::vector<Rat> probes;
    Rat epsilon;
    bool trending_to_zero = false;
    std::vector<bool> probe_recurrent;  // parallel to probes
};

CheckReport run_check(const FunctionSequence& seq, const RunConfig& config);

struct ScanRow {
    Rat epsilon;
    int survivors = 0;
    int exit_code = ExitError;
    std::optional<Rat> witness;
    std::optional<WitnessMode> mode;
};

/// One witness pipeline per grid epsilon; the grid must be nonempty and every
/// point must satisfy 0 < eps, 2*eps < 1.
std::vector<ScanRow> run_scan(const FunctionSequence& seq, const std::vector<Rat>& grid,
                              const RunConfig& config);

struct IntersectOutcome {
    IntervalSet intersection;
    Rat total_length;
};

IntersectOutcome run_intersect(const std::vector<IntervalSet>& sets);

FunctionSequence load_sequence_file(const std::string& path);
/// Accepts {"sets":[...]} or a bare array of interval-set objects.
std::vector<IntervalSet> load_interval_sets_file(const std::string& path);

nlohmann::json check_report_json(const CheckReport& report);
std::string check_report_csv(const CheckReport& report);
nlohmann::json scan_json(const std::vector<ScanRow>& rows);
std::string scan_csv(const std::vector<ScanRow>& rows);
nlohmann::json intersect_json(const IntersectOutcome& outcome);
std::string intersect_csv(const IntersectOutcome& outcome);

}  // namespace arzela
