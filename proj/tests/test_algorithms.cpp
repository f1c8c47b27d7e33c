#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "pureheap/algorithms.hpp"
#include "pureheap/forest.hpp"

using namespace pureheap;

namespace {

int count_kind(const Trace& t, SubopKind k) {
    int n = 0;
    for (const TraceEntry& e : t) n += (e.op.kind == k);
    return n;
}

}  // namespace

TEST_CASE("registry knows both programs") {
    CHECK(algorithm_registry().size() == 2);
    CHECK(find_algorithm("two-pass") != nullptr);
    CHECK(find_algorithm("multipass") != nullptr);
    CHECK(find_algorithm("bogus") == nullptr);
}

TEST_CASE("two-pass on the worked four-root example") {
    // Roots left to right 3 1 4 2: first pass pairs them into 1(3) and 2(4),
    // second pass links back to a single root 1.
    Forest f;
    f.insert(2);
    f.insert(4);
    f.insert(1);
    f.insert(3);
    ExtractMinOutcome out = run_extract_min(f, two_pass_program);
    CHECK(out.removed.value == 1);
    CHECK(count_kind(out.trace, SubopKind::Pair) == 3);
    CHECK(out.trace.back().op.kind == SubopKind::End);
    CHECK(f.size() == 3);
    f.validate();
}

TEST_CASE("multipass walks back after every pass") {
    Forest f;
    for (int v : {9, 7, 5, 3, 1}) f.insert(v);  // roots L->R: 1 3 5 7 9
    ExtractMinOutcome out = run_extract_min(f, multipass_program);
    CHECK(out.removed.value == 1);
    CHECK(count_kind(out.trace, SubopKind::Pair) == 4);
    CHECK(f.size() == 4);
    f.validate();
}

TEST_CASE("pair count is exactly roots minus one") {
    std::mt19937_64 rng(414243);
    for (const AlgorithmInfo& alg : algorithm_registry()) {
        for (int iter = 0; iter < 40; ++iter) {
            Forest f;
            int n = 1 + int(rng() % 40);
            for (int i = 0; i < n; ++i) f.insert((long long)(rng() % 1000));
            std::size_t roots = f.roots_rtl().size();
            ExtractMinOutcome out = run_extract_min(f, alg.program);
            CHECK(count_kind(out.trace, SubopKind::Pair) == int(roots) - 1);
            CHECK(count_kind(out.trace, SubopKind::End) == 1);
            CHECK(out.subops == (long long)out.trace.size());
        }
    }
}

TEST_CASE("drains return keys in sorted order") {
    std::mt19937_64 rng(99);
    for (const AlgorithmInfo& alg : algorithm_registry()) {
        for (int iter = 0; iter < 12; ++iter) {
            Forest f;
            int n = 1 + int(rng() % 128);
            std::vector<long long> values;
            for (int i = 0; i < n; ++i) {
                values.push_back((long long)(rng() % 64) - 16);
                f.insert(values.back());
            }
            std::sort(values.begin(), values.end());
            for (long long want : values) {
                ExtractMinOutcome out = run_extract_min(f, alg.program);
                REQUIRE(out.removed.value == want);
            }
            CHECK(f.size() == 0);
        }
    }
}

TEST_CASE("interleaved inserts and decreases still drain the true minimum") {
    std::mt19937_64 rng(5150);
    for (const AlgorithmInfo& alg : algorithm_registry()) {
        Forest f;
        std::vector<NodeId> alive;
        std::vector<long long> keys;  // by node id
        auto key_of = [&](NodeId h) { return keys[(std::size_t)h]; };
        for (int step = 0; step < 600; ++step) {
            int r = int(rng() % 10);
            if (r < 5 || alive.empty()) {
                long long v = (long long)(rng() % 4096) - 2048;
                NodeId h = f.insert(v);
                if ((std::size_t)h >= keys.size()) keys.resize((std::size_t)h + 1);
                keys[(std::size_t)h] = v;
                alive.push_back(h);
            } else if (r < 7) {
                NodeId h = alive[rng() % alive.size()];
                long long d = (long long)(rng() % 64);
                f.decrease_key(h, d);
                keys[(std::size_t)h] -= d;
            } else {
                auto best = std::min_element(
                    alive.begin(), alive.end(),
                    [&](NodeId a, NodeId b) { return key_of(a) < key_of(b); });
                long long want = key_of(*best);
                ExtractMinOutcome out = run_extract_min(f, alg.program);
                REQUIRE(out.removed.value == want);
                alive.erase(std::find(alive.begin(), alive.end(), out.victim));
            }
        }
        f.validate();
    }
}

TEST_CASE("programs are deterministic given the recorded answers") {
    std::mt19937_64 rng(777);
    for (const AlgorithmInfo& alg : algorithm_registry()) {
        Forest f;
        for (int i = 0; i < 33; ++i) f.insert((long long)(rng() % 100));
        Forest copy = f;
        ExtractMinOutcome live = run_extract_min(f, alg.program);

        // Dry replay: fed its own transcript, the program re-issues it exactly.
        ReplayFacade replay(live.trace);
        alg.program(replay);
        CHECK(replay.exhausted());

        // Live rerun on an identical forest lands in the identical state.
        ExtractMinOutcome again = run_extract_min(copy, alg.program);
        CHECK(again.trace.size() == live.trace.size());
        for (std::size_t i = 0; i < live.trace.size(); ++i)
            REQUIRE(again.trace[i] == live.trace[i]);
        CHECK(again.removed.value == live.removed.value);
        CHECK(copy.structural_hash() == f.structural_hash());
    }
}

TEST_CASE("replay flags a diverging transcript") {
    Forest f;
    f.insert(1);
    f.insert(2);
    ExtractMinOutcome live = run_extract_min(f, two_pass_program);
    Trace tampered = live.trace;
    // Flip the first recorded answer; the program must branch differently.
    for (TraceEntry& e : tampered)
        if (e.ret.has_value()) {
            e.ret = !*e.ret;
            break;
        }
    ReplayFacade replay(tampered);
    CHECK_THROWS_AS(two_pass_program(replay), VmError);
}

TEST_CASE("run accounting: subops land in the forest cost ledger") {
    Forest f;
    for (int i = 0; i < 9; ++i) f.insert(i);
    const CostAccount& costs = f.costs();
    long long before_subops = costs.extract_min_subops;
    long long before_pairings = costs.pairings;
    ExtractMinOutcome out = run_extract_min(f, two_pass_program);
    CHECK(costs.extract_min_subops - before_subops == out.subops);
    CHECK(costs.pairings - before_pairings == 8);
    CHECK(costs.extract_mins == 1);
}
