#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pureheap/errors.hpp"

namespace pureheap {

// Parameters of the rank instrumentation.
//
//   d  - hypothesized amortized decrease-key cost; only enters through w.
//   w  - pairing-win threshold, fixed at 2d+1: a node's rank rises when the
//        w-th efficiently linked child of the current run arrives.
//   W  - efficiency window: a child is efficiently linked when its rank lies
//        within W below the parent's running rank (inclusive on both ends).
//   T  - default threshold: a run of T children forces a rank increment even
//        without w efficient ones.  Conventionally T = 2^a * w.
struct RankParams {
    int d = 1;
    int W = 1;
    long long T = 3072;  // 2^10 * 3, the default for d = 1

    int w() const { return 2 * d + 1; }
    double f() const { return double(T) / (2.0 * std::log2(double(w()))); }
    double g() const { return double(w()) / (2.0 * std::log2(double(w()))); }

    static RankParams from_exponent(int d, int W, int a);  // T = 2^a * w
    void validate() const;                                 // throws VmError on nonsense
    // T below w makes the default case unreachable before the efficient case;
    // T above w^W + w - 1 breaks the closed-form size bound.  Neither is an
    // error (the defaults violate the latter); both are worth reporting.
    bool default_case_reachable() const { return T >= w(); }
    bool size_bound_coherent() const;
};

// Fold state a node carries over its unmarked children, scanned right to
// left in attachment order.  run_len / run_eff describe the tail run: the
// children after the last rank increment, and how many of them were
// efficiently linked.
struct RankFold {
    int rank = 0;
    long long run_len = 0;
    int run_eff = 0;

    bool operator==(const RankFold& o) const {
        return rank == o.rank && run_len == o.run_len && run_eff == o.run_eff;
    }
};

// What one child contributed when it was folded in.
struct RankStep {
    bool efficient = false;
    bool incremental = false;
};

// Advance the fold by one unmarked child of the given rank.
RankStep rank_fold_push(RankFold& st, int child_rank, const RankParams& p);

// Largest size the size-bound recurrence assigns to an unmarked heap of rank
// k:  s_k = (w-1) s_{k-1} + (T-(w-1)) s_{k-W-1}, with s_j = 1 for j <= 0 and
// the second term dropped while its index is negative.  Values grow fast;
// the 128-bit result covers every k the tests touch.
unsigned __int128 max_unmarked_heap_size(int k, const RankParams& p);
std::string u128_to_string(unsigned __int128 v);

// w^k in the same width, for comparing against the recurrence.
unsigned __int128 pow_u128(unsigned __int128 base, int exp);

}  // namespace pureheap
