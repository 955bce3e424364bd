#include "arzela/extraction.hpp"

#include <stdexcept>

#include "arzela/errors.hpp"

namespace arzela {

ExtractionConfig::ExtractionConfig(Rat eps, int max_idx,
                                   std::optional<std::vector<int>> subseq)
    : epsilon(std::move(eps)), max_index(max_idx), subsequence(std::move(subseq)) {
    if (!(Rat() < epsilon) || !(Rat(2) * epsilon < Rat(1)))
        throw InvalidInput("epsilon must satisfy 0 < epsilon and 2*epsilon < 1");
    if (max_index < 1) throw InvalidInput("max_index must be at least 1");
    if (subsequence) {
        const auto& s = *subsequence;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 1) throw InvalidInput("subsequence indices start at 1");
            if (i > 0 && s[i] <= s[i - 1])
                throw InvalidInput("subsequence must be strictly increasing");
        }
    }
}

std::vector<int> select_subsequence(const FunctionSequence& seq, const Rat& epsilon,
                                    int max_index) {
    std::vector<int> candidates;
    for (int n = 1; n <= max_index; ++n) candidates.push_back(n);
    return select_subsequence(seq, epsilon, candidates);
}

std::vector<int> select_subsequence(const FunctionSequence& seq, const Rat& epsilon,
                                    const std::vector<int>& candidates) {
    Rat threshold = Rat(2) * epsilon;
    std::vector<int> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] < 1) throw InvalidInput("term indices start at 1");
        if (i > 0 && candidates[i] <= candidates[i - 1])
            throw InvalidInput("candidate indices must be strictly increasing");
        if (threshold < seq.term(candidates[i]).integral()) out.push_back(candidates[i]);
    }
    return out;
}

TallSupport tall_support(const StepFunction& f, const Rat& epsilon, int source_index) {
    if (f.min_value() < Rat() || Rat(1) < f.max_value())
        throw InvalidInput("tall supports need codomain within [0,1]");
    Rat integral = f.integral();
    if (!(Rat(2) * epsilon < integral))
        throw HypothesisError("integral " + integral.str() + " is not above 2*epsilon = " +
                              (Rat(2) * epsilon).str());

    // Glue a run of tall pieces through a breakpoint only when the function
    // exceeds epsilon at the breakpoint itself; the run is then one maximal
    // open interval of {f > epsilon}.
    const auto& bps = f.breakpoints();
    const auto& vals = f.values();
    std::vector<OpenInterval> raw;
    std::optional<std::size_t> run_start;
    for (std::size_t i = 0; i <= vals.size(); ++i) {
        bool tall = i < vals.size() && epsilon < vals[i];
        if (tall && run_start && !(epsilon < f.point_value(i))) {
            raw.emplace_back(bps[*run_start], bps[i]);
            run_start = i;
        } else if (tall && !run_start) {
            run_start = i;
        } else if (!tall && run_start) {
            raw.emplace_back(bps[*run_start], bps[i]);
            run_start.reset();
        }
    }

    TallSupport out{normalize(std::move(raw)), source_index, epsilon};
    if (out.set.total_length() < epsilon)
        throw std::logic_error("tall support lost the length guarantee");
    for (const OpenInterval& iv : out.set.intervals())
        if (!(epsilon < f.evaluate(iv.midpoint())))
            throw std::logic_error("tall support contains a short piece");
    return out;
}

std::vector<TailUnion> build_tail_unions(const std::vector<TallSupport>& supports,
                                         int depth) {
    if (depth < 1) throw InvalidInput("tail union depth must be at least 1");
    if (static_cast<std::size_t>(depth) > supports.size())
        throw InvalidInput("tail union depth " + std::to_string(depth) +
                           " exceeds the " + std::to_string(supports.size()) +
                           " available supports");

    std::vector<TailUnion> out(static_cast<std::size_t>(depth));
    IntervalSet acc;
    std::vector<int> covered;
    for (std::size_t i = supports.size(); i-- > 0;) {
        acc = set_union(acc, supports[i].set);
        covered.push_back(supports[i].source_index);
        if (i < static_cast<std::size_t>(depth)) {
            out[i].set = acc;
            out[i].start_index = static_cast<int>(i) + 1;
            out[i].covered_indices.assign(covered.rbegin(), covered.rend());
        }
    }
    return out;
}

IntervalSet truncate_enumerated(
    const std::function<std::optional<OpenInterval>()>& enumerator,
    const std::function<Rat(int)>& tail_bound, const Rat& budget,
    int iteration_cap) {
    if (budget < Rat()) throw InvalidInput("budget must be nonnegative");
    std::vector<OpenInterval> prefix;
    Rat raw_length;
    for (int k = 0;; ++k) {
        if (!(budget < tail_bound(k))) break;
        if (k >= iteration_cap)
            throw BudgetUnreachable("declared tail bound never reached budget " +
                                    budget.str() + " within " +
                                    std::to_string(iteration_cap) + " intervals");
        std::optional<OpenInterval> next = enumerator();
        if (!next) break;
        raw_length += next->length();
        prefix.push_back(std::move(*next));
    }
    IntervalSet out = normalize(std::move(prefix));
    if (out.total_length() != raw_length)
        throw InvalidInput("enumerated intervals must be disjoint");
    return out;
}

}  // namespace arzela
