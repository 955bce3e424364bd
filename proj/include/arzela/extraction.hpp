#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "arzela/function_sequence.hpp"
#include "arzela/interval_set.hpp"

namespace arzela {

/// Parameters of the rectangle-inscription stage. epsilon must satisfy
/// 0 < epsilon and 2*epsilon < 1, else the working hypothesis (an integral
/// above 2*epsilon for a [0,1]-valued function) is unsatisfiable.
struct ExtractionConfig {
    ExtractionConfig(Rat epsilon, int max_index,
                     std::optional<std::vector<int>> subsequence = std::nullopt);

    Rat epsilon;
    int max_index;
    std::optional<std::vector<int>> subsequence;
};

/// Open set on which one term stays strictly above epsilon; its total length
/// is at least epsilon.
struct TallSupport {
    IntervalSet set;
    int source_index = 0;
    Rat epsilon;
};

/// Union of all tall supports from position start_index onward.
struct TailUnion {
    IntervalSet set;
    int start_index = 0;
    std::vector<int> covered_indices;
};

/// All indices n <= max_index whose term has exact integral > 2*epsilon,
/// increasing. Empty means the hypothesis fails at this epsilon and depth.
std::vector<int> select_subsequence(const FunctionSequence& seq, const Rat& epsilon,
                                    int max_index);

/// Same filter over an explicit candidate index list (strictly increasing,
/// indices >= 1).
std::vector<int> select_subsequence(const FunctionSequence& seq, const Rat& epsilon,
                                    const std::vector<int>& candidates);

/// The open set where f exceeds epsilon, as maximal open intervals: runs of
/// adjacent tall pieces are glued across a breakpoint only when the value at
/// the breakpoint itself exceeds epsilon. Requires codomain within [0,1] and
/// integral(f) > 2*epsilon; the returned set always has total length >=
/// epsilon (pieces with value <= epsilon carry at most epsilon of the
/// integral, so the tall pieces carry more than epsilon of area at height at
/// most 1).
TallSupport tall_support(const StepFunction& f, const Rat& epsilon,
                         int source_index = 0);

/// V_1..V_N where V_n is the union of supports at positions >= n (through
/// the last available support). Nested decreasing by construction.
std::vector<TailUnion> build_tail_unions(const std::vector<TallSupport>& supports,
                                         int depth);

/// Finite prefix of an enumerated interval stream whose declared tail is
/// within budget: pulls intervals until tail_bound(k) <= budget for the count
/// pulled so far (smallest such k), or until the stream ends (tail is then
/// empty). tail_bound(k) must bound the total length beyond the first k
/// intervals, nonincreasing to 0.
IntervalSet truncate_enumerated(
    const std::function<std::optional<OpenInterval>()>& enumerator,
    const std::function<Rat(int)>& tail_bound, const Rat& budget,
    int iteration_cap = 100000);

}  // namespace arzela
