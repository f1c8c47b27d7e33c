#include "pureheap/enumerate.hpp"

#include <deque>
#include <set>

#include "pureheap/errors.hpp"

namespace pureheap {

namespace {

// forests[k] = every ordered forest on k nodes, built as (first tree of
// size i) * (rest on k-i nodes); each code is produced exactly once.
std::vector<std::vector<std::string>> forests_up_to(int n) {
    std::vector<std::vector<std::string>> forests(n + 1);
    forests[0] = {""};
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= k; ++i)
            for (const std::string& children : forests[i - 1])
                for (const std::string& rest : forests[k - i])
                    forests[k].push_back("(" + children + ")" + rest);
    return forests;
}

}  // namespace

std::vector<std::string> forest_shape_codes(int n) {
    if (n < 0) throw VmError(ErrorCode::ParseError, "negative node count");
    return forests_up_to(n)[n];
}

MarkedForestCount enumerate_marked_forests(int n, int cap) {
    if (n < 0) throw VmError(ErrorCode::ParseError, "negative node count");
    if (n > cap)
        throw VmError(ErrorCode::CapExceeded,
                      "enumeration of " + std::to_string(n) + " nodes exceeds cap " +
                          std::to_string(cap));
    std::vector<std::string> shapes = forest_shape_codes(n);
    // Generation is duplicate-free by construction; the set re-checks that.
    std::set<std::string> distinct(shapes.begin(), shapes.end());
    if (distinct.size() != shapes.size())
        throw VmError(ErrorCode::ParseError, "shape generator produced a duplicate");
    MarkedForestCount out;
    out.shapes = shapes.size();
    for (std::size_t s = 0; s < shapes.size(); ++s)
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) ++out.marked;
    return out;
}

ReachableHeapStats explore_pairable_heaps(const RankParams& params,
                                          long long size_budget, int rank_cap) {
    params.validate();
    ReachableHeapStats stats;
    std::set<HeapState> seen;
    std::set<std::pair<int, long long>> loser_classes;  // (rank, size)
    std::deque<HeapState> queue;

    auto note = [&](const HeapState& s) {
        auto [mx_it, fresh] = stats.max_size_by_rank.try_emplace(s.rank, s.size);
        if (!fresh) mx_it->second = std::max(mx_it->second, s.size);
        auto [mn_it, fresh2] = stats.min_size_by_rank.try_emplace(s.rank, s.size);
        if (!fresh2) mn_it->second = std::min(mn_it->second, s.size);
    };
    auto push = [&](const HeapState& s) {
        if (s.rank > rank_cap) return;
        if (seen.insert(s).second) {
            queue.push_back(s);
            note(s);
        }
    };
    auto combine = [&](const HeapState& winner, int loser_rank, long long loser_size) {
        if (winner.size + loser_size > size_budget) {
            stats.size_budget_hit = true;
            return;
        }
        RankFold st{winner.rank, winner.run_len, winner.run_eff};
        rank_fold_push(st, loser_rank, params);
        // A rank increment leaves the winner's key one above -rank; a unit
        // decrease-key restores it, so the combined heap stays all-unmarked.
        push({st.rank, st.run_len, st.run_eff, winner.size + loser_size});
    };

    push({0, 0, 0, 1});
    while (!queue.empty()) {
        HeapState s = queue.front();
        queue.pop_front();
        // s as the winner against every loser class it outranks.
        for (const auto& [lr, lsz] : loser_classes)
            if (lr <= s.rank) combine(s, lr, lsz);
        // s as a loser, if its class is new, against every seen winner.
        if (loser_classes.insert({s.rank, s.size}).second) {
            // Iterate a snapshot: combine() may grow `seen`.
            std::vector<HeapState> winners(seen.begin(), seen.end());
            for (const HeapState& w : winners)
                if (w.rank >= s.rank) combine(w, s.rank, s.size);
        }
    }
    stats.states = (long long)seen.size();
    return stats;
}

long long catalan_recurrence(int n) {
    if (n < 0 || n > 35)
        fail(ErrorCode::CapExceeded, "catalan index outside 0..35: " + std::to_string(n));
    std::vector<long long> c(std::size_t(n) + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

}  // namespace pureheap
