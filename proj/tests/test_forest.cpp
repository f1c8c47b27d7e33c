#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pureheap/algorithms.hpp"
#include "pureheap/forest.hpp"

using namespace pureheap;

TEST_CASE("insert places leftmost and keeps right-based indices stable") {
    Forest f;
    NodeId a = f.insert(0);
    NodeId b = f.insert(0);
    NodeId c = f.insert(0);
    CHECK(f.size() == 3);
    CHECK(f.leftmost_root() == c);
    CHECK(f.roots_rtl() == std::vector<NodeId>{a, b, c});
    CHECK(f.position_of(a).to_string() == "0");  // rightmost, index from the right
    CHECK(f.position_of(c).to_string() == "2");
    CHECK(f.node_at(f.position_of(b)) == b);
    NodeId d = f.insert(0);
    CHECK(f.position_of(a).to_string() == "0");  // unchanged by the new leftmost root
    CHECK(f.position_of(d).to_string() == "3");
}

TEST_CASE("marks follow key = -rank") {
    Forest f;
    NodeId z = f.insert(0);
    CHECK(!f.node(z).marked);  // fresh rank-0 node with key 0
    NodeId m = f.insert(5);
    CHECK(f.node(m).marked);   // key 5 != -0
    CHECK(f.snapshot_structure() == "(m)(u)");
    f.decrease_key(m, 5);
    CHECK(!f.node(m).marked);
    CHECK(f.snapshot_structure() == "(u)(u)");
}

TEST_CASE("decrease-key detaches and relocates to the leftmost root slot") {
    Forest f;
    NodeId a = f.insert(0);
    NodeId b = f.insert(0);
    f.decrease_key(a, 0);  // already a root: still moves to the leftmost slot
    CHECK(f.leftmost_root() == a);
    CHECK(f.roots_rtl() == std::vector<NodeId>{b, a});
    CHECK(f.costs().decrease_keys == 1);
}

TEST_CASE("decrease-key from inside a tree refreshes the old ancestors") {
    Forest f(RankParams{1, 1, 4});
    for (int i = 0; i < 4; ++i) f.insert(0);
    run_extract_min(f, two_pass_program);  // leaves a root with a child
    REQUIRE(f.size() == 3);
    NodeId root = f.roots_rtl().back();
    REQUIRE(!f.node(root).children_rtl.empty());
    NodeId child = f.node(root).children_rtl.back();
    long long before = f.node(root).unmarked_size;
    bool child_unmarked = !f.node(child).marked;
    f.decrease_key(child, 0);
    CHECK(f.node(child).parent == kNoNode);
    CHECK(f.leftmost_root() == child);
    if (child_unmarked) CHECK(f.node(root).unmarked_size < before);
    CHECK(f.fold_cache_consistent(root));
    f.validate();
}

TEST_CASE("negative infinity keys sort first and are never marked") {
    Forest f;
    NodeId a = f.insert(0);
    NodeId b = f.insert(0);
    f.decrease_key_to_neg_inf(b);
    CHECK(f.node(b).key.neg_inf);
    CHECK(!f.node(b).marked);
    CHECK(f.min_root() == b);
    CHECK(key_less(f.node(b).key, f.node(a).key));
    CHECK_THROWS_AS(f.restoring_delta(b), VmError);
}

TEST_CASE("restoring delta math") {
    Forest f;
    NodeId m = f.insert(7);
    CHECK(f.restoring_delta(m) == 7);  // rank 0, so the target key is 0
    f.decrease_key(m, f.restoring_delta(m));
    CHECK(f.restoring_delta(m) == 0);
    NodeId deep = f.insert(-3);  // key already below -rank
    try {
        f.restoring_delta(deep);
        FAIL("expected NegativeDelta");
    } catch (const VmError& e) {
        CHECK(e.code() == ErrorCode::NegativeDelta);
    }
    try {
        f.decrease_key(m, -1);
        FAIL("expected NegativeDelta");
    } catch (const VmError& e) {
        CHECK(e.code() == ErrorCode::NegativeDelta);
    }
}

TEST_CASE("serial numbers break ties toward the older node") {
    Forest f;
    NodeId a = f.insert(4);
    NodeId b = f.insert(4);
    CHECK(key_less(f.node(a).key, f.node(b).key));
    CHECK(f.min_root() == a);
}

TEST_CASE("mutation guards during an open session") {
    Forest f;
    f.insert(0);
    f.insert(0);
    ExtractMinSession s(f, 2);
    CHECK_THROWS_AS(f.insert(1), VmError);
    CHECK_THROWS_AS(f.decrease_key(0, 0), VmError);
    CHECK_THROWS_AS(f.snapshot_structure(), VmError);
    CHECK(f.snapshot_structure_unchecked() == "(u)(u)");
    try {
        Forest g;
        g.insert(0);
        ExtractMinSession s1(g, 1);
        ExtractMinSession s2(g, 1);
        FAIL("expected SessionInProgress");
    } catch (const VmError& e) {
        CHECK(e.code() == ErrorCode::SessionInProgress);
    }
}

TEST_CASE("stale handles are rejected after removal") {
    Forest f;
    f.insert(0);
    f.insert(0);
    ExtractMinOutcome out = run_extract_min(f, two_pass_program);
    CHECK(!f.is_live(out.victim));
    CHECK_THROWS_AS(f.node(out.victim), VmError);
    CHECK_THROWS_AS(f.decrease_key(out.victim, 0), VmError);
    CHECK_THROWS_AS(f.position_of(out.victim), VmError);
}

TEST_CASE("snapshot encodes shape, marks, and order") {
    Forest f(RankParams{1, 1, 4});
    for (int i = 0; i < 3; ++i) f.insert(0);
    run_extract_min(f, two_pass_program);
    // Three zeros pair into one tree; the removed root frees its children in
    // order.  Two survivors: one root with one child.
    CHECK(f.size() == 2);
    CHECK(f.snapshot_structure() == "(u(u))");
    f.insert(0);
    CHECK(f.snapshot_structure() == "(u)(u(u))");
}

TEST_CASE("forest copies are independent replicas") {
    Forest f(RankParams{1, 1, 4});
    for (int i = 0; i < 6; ++i) f.insert(0);
    run_extract_min(f, multipass_program);
    Forest g = f;
    CHECK(g.structural_hash() == f.structural_hash());
    CHECK(g.snapshot_structure() == f.snapshot_structure());
    auto before = f.structural_hash();
    g.insert(0);
    run_extract_min(g, multipass_program);
    CHECK(f.structural_hash() == before);
    f.validate();
    g.validate();
}

TEST_CASE("cost account tallies unit costs by operation") {
    Forest f;
    for (int i = 0; i < 5; ++i) f.insert(0);
    f.decrease_key(0, 0);
    ExtractMinOutcome out = run_extract_min(f, two_pass_program);
    const CostAccount& c = f.costs();
    CHECK(c.inserts == 5);
    CHECK(c.decrease_keys == 1);
    CHECK(c.extract_mins == 1);
    CHECK(c.extract_min_subops == out.subops);
    CHECK(c.pairings == 4);  // five roots pair down to one
    CHECK(c.total() == 5 + 1 + out.subops);
}

TEST_CASE("positions round-trip through arbitrary shapes") {
    Forest f(RankParams{1, 1, 4});
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) f.insert(0);
    for (int round = 0; round < 6; ++round) {
        run_extract_min(f, round % 2 ? two_pass_program : multipass_program);
        f.insert(0);
        f.validate();
        for (NodeId id = 0; id < 40; ++id) {
            if (!f.is_live(id)) continue;
            CHECK(f.node_at(f.position_of(id)) == id);
        }
        NodeId some = f.roots_rtl()[rng() % f.roots_rtl().size()];
        CHECK(f.subtree_size(some) >= 1);
    }
}
