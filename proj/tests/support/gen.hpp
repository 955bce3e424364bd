#pragma once

// Seeded generators for the randomized suites. Everything dyadic so exact
// arithmetic stays cheap at depth.

#include <random>
#include <vector>

#include "arzela/interval_set.hpp"
#include "arzela/step_function.hpp"

namespace gen {

using arzela::IntervalSet;
using arzela::OpenInterval;
using arzela::Rat;
using arzela::StepFunction;

using Rng = std::mt19937_64;

inline long pick(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// p/2^k with 0 <= p <= 2^k.
inline Rat dyadic(Rng& rng, int k) {
    long den = 1L << k;
    return Rat(pick(rng, 0, den), den);
}

/// Distinct sorted points in (0,1) on the 2^-k grid; at most 2^k - 1 points.
inline std::vector<Rat> distinct_interior_points(Rng& rng, int count, int k) {
    long den = 1L << k;
    std::vector<long> nums;
    while (static_cast<int>(nums.size()) < count) {
        long p = pick(rng, 1, den - 1);
        bool dup = false;
        for (long q : nums) dup = dup || q == p;
        if (!dup) nums.push_back(p);
    }
    std::sort(nums.begin(), nums.end());
    std::vector<Rat> out;
    for (long p : nums) out.emplace_back(p, den);
    return out;
}

/// Disjoint (possibly only separated, never overlapping) raw intervals:
/// consecutive pairs of 2*components distinct grid points.
inline std::vector<OpenInterval> random_raw_intervals(Rng& rng, int components,
                                                      int k) {
    std::vector<Rat> pts = distinct_interior_points(rng, 2 * components, k);
    std::vector<OpenInterval> out;
    for (int i = 0; i < components; ++i)
        out.emplace_back(pts[2 * i], pts[2 * i + 1]);
    return out;
}

/// Raw intervals that may overlap or touch arbitrarily.
inline std::vector<OpenInterval> random_messy_intervals(Rng& rng, int count, int k) {
    std::vector<OpenInterval> out;
    long den = 1L << k;
    for (int i = 0; i < count; ++i) {
        long a = pick(rng, 0, den - 1);
        long b = pick(rng, a + 1, den);
        out.emplace_back(Rat(a, den), Rat(b, den));
    }
    return out;
}

inline IntervalSet random_set(Rng& rng, int max_components, int k) {
    int c = static_cast<int>(pick(rng, 1, max_components));
    return arzela::normalize(random_raw_intervals(rng, c, k));
}

/// Step function on [0,1] with dyadic breakpoints and values in [0,1].
inline StepFunction random_step_function(Rng& rng, int max_pieces, int k) {
    int pieces = static_cast<int>(pick(rng, 1, max_pieces));
    std::vector<Rat> bps{Rat()};
    if (pieces > 1)
        for (const Rat& p : distinct_interior_points(rng, pieces - 1, k))
            bps.push_back(p);
    bps.push_back(Rat(1));
    std::vector<Rat> vals;
    for (int i = 0; i < pieces; ++i) vals.push_back(dyadic(rng, 6));
    return StepFunction(std::move(bps), std::move(vals));
}

/// Step function with integral exactly above 2*epsilon: random, then random
/// pieces are raised to 1 until the integral clears the bar.
inline StepFunction tall_step_function(Rng& rng, int max_pieces, int k,
                                       const Rat& epsilon) {
    StepFunction f = random_step_function(rng, max_pieces, k);
    Rat bar = Rat(2) * epsilon;
    std::vector<Rat> vals = f.values();
    while (!(bar < f.integral())) {
        std::size_t i = static_cast<std::size_t>(
            pick(rng, 0, static_cast<long>(vals.size()) - 1));
        if (vals[i] == Rat(1)) continue;
        vals[i] = Rat(1);
        f = StepFunction(f.breakpoints(), vals);
    }
    return f;
}

/// Nested levels: each component of a level is cut into quarters and a
/// random subset of quarters survives into the next level (every level keeps
/// at least one quarter overall). Quarter boundaries make touching
/// components, so the trees branch heavily.
inline std::vector<IntervalSet> random_nested_levels(Rng& rng, int depth,
                                                     int max_roots = 3) {
    std::vector<IntervalSet> levels;
    levels.push_back(random_set(rng, max_roots, 4));
    for (int d = 1; d < depth; ++d) {
        std::vector<OpenInterval> next;
        const IntervalSet& prev = levels.back();
        for (const OpenInterval& comp : prev.intervals()) {
            Rat w = comp.length() / Rat(4);
            for (int q = 0; q < 4; ++q) {
                if (pick(rng, 0, 9) < 6) {
                    Rat lo = comp.lo + w * Rat(q);
                    next.emplace_back(lo, lo + w);
                }
            }
        }
        if (next.empty()) {
            const OpenInterval& comp = prev.intervals().front();
            Rat w = comp.length() / Rat(4);
            next.emplace_back(comp.lo, comp.lo + w);
        }
        levels.push_back(arzela::normalize(std::move(next)));
    }
    return levels;
}

}  // namespace gen
