#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pureheap/errors.hpp"
#include "pureheap/key.hpp"
#include "pureheap/position.hpp"
#include "pureheap/rank.hpp"

namespace pureheap {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

struct HeapNode {
    Key key;
    NodeId parent = kNoNode;
    // Children in right-to-left order: children_rtl[0] is the rightmost
    // (oldest) child, back() the leftmost.  Attachment always prepends on
    // the left, i.e. push_back here, so right-based indices stay stable.
    std::vector<NodeId> children_rtl;
    bool alive = false;
    bool marked = false;               // key no longer equals -rank
    bool paired_in_session = false;    // attached by Pair in the open extract-min

    // Rank bookkeeping, maintained incrementally and checkable from scratch.
    RankFold fold;                     // fold over unmarked children, right to left
    long long unmarked_size = 1;       // nodes reachable without crossing a marked child

    int rank() const { return fold.rank; }
};

struct CostAccount {
    long long inserts = 0;
    long long decrease_keys = 0;
    long long extract_mins = 0;
    long long extract_min_subops = 0;  // End included, one unit per suboperation
    long long pairings = 0;            // Pair suboperations across all sessions

    long long total() const { return inserts + decrease_keys + extract_min_subops; }
};

// Per-child rank detail for one node, right-to-left (index 0 = rightmost
// unmarked child, matching the y_1..y_k numbering).
struct ChildRankInfo {
    NodeId child = kNoNode;
    std::uint32_t rtl_index = 0;       // index into children_rtl (marked ones skipped)
    int child_rank = 0;
    int running_rank_before = 0;
    bool efficient = false;
    bool incremental = false;
};

// An ordered forest of heap-ordered trees.  Value type: copying a forest
// yields an independent replica with the same node ids, which is how the
// adversary clones whole histories.
class Forest {
  public:
    explicit Forest(RankParams params = RankParams{});

    const RankParams& params() const { return params_; }

    // -- mutations outside extract-min ------------------------------------
    NodeId insert(long long value);                    // new leftmost root, unit cost
    void decrease_key(NodeId h, long long delta);      // detach, decrease, leftmost root
    void decrease_key_to_neg_inf(NodeId h);            // same but key becomes -infinity
    // Delta that restores key = -rank; 0 for an unmarked node.  Errors if the
    // restoration would have to *increase* the key.
    long long restoring_delta(NodeId h) const;

    // -- structure queries -------------------------------------------------
    bool empty() const { return roots_rtl_.empty(); }
    long long size() const { return live_count_; }
    const std::vector<NodeId>& roots_rtl() const { return roots_rtl_; }
    NodeId leftmost_root() const;
    const HeapNode& node(NodeId id) const;
    bool is_live(NodeId id) const { return id < nodes_.size() && nodes_[id].alive; }
    bool session_active() const { return session_active_; }

    NodeId node_at(const Position& pos) const;         // throws InvalidTarget if absent
    Position position_of(NodeId id) const;
    long long subtree_size(NodeId id) const;           // full subtree, marks ignored
    std::vector<NodeId> live_nodes() const;            // ascending id order

    // Minimum-key live node (always a root, by heap order).  EmptyForest if none.
    NodeId min_root() const;

    // -- analysis ----------------------------------------------------------
    // Canonical shape+mark encoding: each node is "(u...)" or "(m...)" with
    // children listed left to right; roots likewise.  Empty forest encodes "".
    // SessionInProgress while an extract-min is open.
    std::string snapshot_structure() const;
    std::string snapshot_structure_unchecked() const;  // same, no session guard

    std::vector<ChildRankInfo> child_rank_details(NodeId id) const;
    int count_efficient_children(NodeId id) const;
    // Indices (1-based, right-to-left over unmarked children) forming
    // noninc(y_i): the run y_i closes, per the rank recurrence.
    std::vector<int> noninc_indices(NodeId id, int i) const;

    // Recompute one node's fold from its children's cached ranks and compare
    // with the cache; used by the self-check hook and tests.
    bool fold_cache_consistent(NodeId id) const;

    const CostAccount& costs() const { return costs_; }
    std::uint64_t structural_hash() const;             // forest only, session excluded

    // One line per live node: position=<path> rank=<r> marked=<0|1> eff=<list>,
    // eff listing the right-to-left 1-based indices of efficiently linked
    // unmarked children.  Preorder over roots left to right.
    void write_rank_dump(std::ostream& out) const;

    // Counts fold steps that saw a child outranking its parent's running
    // rank; sequences built by the adversary are expected never to do this.
    long long child_outranked_parent_count() const { return child_outranked_parent_; }

    // Invoked after every structural mutation with the node whose rank cache
    // was refreshed; tests hang differential verification here.
    std::function<void(const Forest&, NodeId)> on_rank_refresh;

    void validate() const;                             // internal-consistency assertions

  private:
    friend class ExtractMinSession;

    NodeId new_node(Key key);
    void detach_from_parent(NodeId id);                // erase from parent or root list
    void place_leftmost_root(NodeId id);
    void attach_leftmost_child(NodeId parent, NodeId child, RankStep* step);
    void refresh_upward(NodeId start);                 // rebuild fold/size/mark up the chain
    void refresh_node(NodeId id);                      // rebuild one node from child caches
    void recompute_mark(NodeId id);
    void notify_refresh(NodeId id);

    RankParams params_;
    std::vector<HeapNode> nodes_;
    std::vector<NodeId> roots_rtl_;                    // index 0 = rightmost root
    long long live_count_ = 0;
    std::uint64_t next_serial_ = 0;
    bool session_active_ = false;
    CostAccount costs_;
    long long child_outranked_parent_ = 0;
};

}  // namespace pureheap
