#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pureheap/forest.hpp"
#include "pureheap/subop.hpp"

namespace pureheap {

// An open extract-min: a register file of rho pointers into the forest, the
// certificates accumulated by predicate suboperations, and the running trace.
//
// Certification model.  Unary predicates certify a fact about the node a
// *register* currently references; the certificate dies when that register
// moves (Set, Swap, any Move) or when the node's parent/child/adjacent-
// sibling structure changes.  Compare certifies an order fact about a *pair
// of nodes*; keys cannot change inside a session, so that fact survives
// register motion — which is what lets a program Compare, Swap on a false
// answer, and then Pair on the strength of the one comparison.
class ExtractMinSession {
  public:
    // Forest must outlive the session.  All registers start at the leftmost
    // root.  EmptyForest if there is nothing to extract.
    ExtractMinSession(Forest& forest, int rho);
    ~ExtractMinSession();

    ExtractMinSession(const ExtractMinSession&) = delete;
    ExtractMinSession& operator=(const ExtractMinSession&) = delete;

    int rho() const { return int(ptr_.size()); }
    bool ended() const { return ended_; }
    std::uint64_t subop_count() const { return subop_count_; }
    const Trace& trace() const { return trace_; }
    NodeId pointer(int i) const;                      // 1-based, PointerOutOfRange guarded

    // Validate, apply, record.  Returns the reported boolean for predicates,
    // Compare, and Pair (rank-increment flag); nullopt otherwise.  Throws
    // VmError without touching any state on a rejected suboperation.
    std::optional<bool> apply(const Suboperation& op);

    // Nodes whose mark flipped on during this session, in first-marking order.
    const std::vector<NodeId>& newly_marked() const { return newly_marked_; }

    std::uint64_t state_hash() const;                 // forest + registers + certificates

    // After End: remove the unique root, promote its children in order, close
    // the session.  Returns the removed key.  SessionNotEnded before End.
    Key finish();

  private:
    struct SlotCert {
        std::optional<bool> has_parent, has_left, has_right, has_children;
        void clear() { has_parent = has_left = has_right = has_children = std::nullopt; }
    };

    NodeId node_of(int i) const;
    void require_in_range(int i) const;
    void invalidate_slots_at(NodeId n);               // structure at n changed
    std::optional<bool> do_predicate(const Suboperation& op);
    bool do_compare(int i, int j);
    bool do_pair(int i, int j);
    void do_unpair(int i);
    void do_move(const Suboperation& op);
    void do_end();

    Forest& forest_;
    std::vector<NodeId> ptr_;
    std::vector<SlotCert> cert_;
    std::set<std::pair<NodeId, NodeId>> less_certified_;   // (a,b): key(a) < key(b) certified
    std::vector<std::pair<NodeId, NodeId>> pair_log_;      // (winner, loser) this session
    Trace trace_;
    std::vector<NodeId> newly_marked_;
    std::uint64_t subop_count_ = 0;
    bool ended_ = false;
    bool finished_ = false;
};

}  // namespace pureheap
