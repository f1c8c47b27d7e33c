#pragma once

#include <map>
#include <string>
#include <vector>

#include "pureheap/rank.hpp"

namespace pureheap {

// All distinct ordered-forest shape codes with n nodes, balanced-paren form,
// e.g. n=2 -> {"()()", "(())"}.  Intended for small n; grows as the n-th
// Catalan number.
std::vector<std::string> forest_shape_codes(int n);

struct MarkedForestCount {
    unsigned long long shapes = 0;  // distinct shapes generated
    unsigned long long marked = 0;  // (shape, mark assignment) pairs
};

// Exhaustive generation: every shape, every 2^n mark mask counted one by
// one.  CapExceeded when n exceeds the cap (default 10).
MarkedForestCount enumerate_marked_forests(int n, int cap = 10);

// n-th Catalan number by the convolution recurrence; n <= 35 keeps the
// result inside long long (CapExceeded beyond).  C_n counts ordered-forest
// shapes with n nodes, so C_n * 2^n caps any materialized structure set.
long long catalan_recurrence(int n);

// Closure of {singleton} under "pair two constructed heaps, larger rank
// wins, optionally restore the winner's key after a rank increment".  A
// state abstracts a fully-unmarked constructible heap by the only fields
// that matter for further pairing.
struct HeapState {
    int rank = 0;
    long long run_len = 0;  // children since the last rank increment
    int run_eff = 0;        // efficient links in the current run
    long long size = 1;
    auto operator<=>(const HeapState&) const = default;
};

struct ReachableHeapStats {
    std::map<int, long long> max_size_by_rank;  // within the size budget
    std::map<int, long long> min_size_by_rank;
    long long states = 0;                       // distinct states explored
    bool size_budget_hit = false;               // some combine overflowed the budget
};

// Exhaustive fixed-point search over constructible-heap states with
// subtree sizes capped at size_budget and ranks at rank_cap.
ReachableHeapStats explore_pairable_heaps(const RankParams& params,
                                          long long size_budget, int rank_cap);

}  // namespace pureheap
