#include "pureheap/session.hpp"

#include <algorithm>

namespace pureheap {

namespace {

constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

}  // namespace

ExtractMinSession::ExtractMinSession(Forest& forest, int rho) : forest_(forest) {
    if (forest_.session_active_)
        fail(ErrorCode::SessionInProgress, "another extract-min is open");
    if (forest_.empty()) fail(ErrorCode::EmptyForest, "extract-min on empty forest");
    if (rho < 1) fail(ErrorCode::PointerOutOfRange, "register count must be positive");
    ptr_.assign(std::size_t(rho), forest_.leftmost_root());
    cert_.assign(std::size_t(rho), SlotCert{});
    forest_.session_active_ = true;
    forest_.costs_.extract_mins += 1;
}

ExtractMinSession::~ExtractMinSession() {
    // An abandoned session (error unwind in callers) releases the forest so
    // tests can keep using it; a finished one already has.
    if (!finished_) forest_.session_active_ = false;
}

void ExtractMinSession::require_in_range(int i) const {
    if (i < 1 || std::size_t(i) > ptr_.size())
        fail(ErrorCode::PointerOutOfRange, "pointer index " + std::to_string(i));
}

NodeId ExtractMinSession::pointer(int i) const {
    require_in_range(i);
    return ptr_[std::size_t(i - 1)];
}

NodeId ExtractMinSession::node_of(int i) const { return ptr_[std::size_t(i - 1)]; }

void ExtractMinSession::invalidate_slots_at(NodeId n) {
    for (std::size_t s = 0; s < ptr_.size(); ++s)
        if (ptr_[s] == n) cert_[s].clear();
}

std::optional<bool> ExtractMinSession::apply(const Suboperation& op) {
    if (ended_) fail(ErrorCode::SessionClosed, "suboperation after End");
    switch (op.kind) {
        case SubopKind::HasParent:
        case SubopKind::HasLeftSibling:
        case SubopKind::HasRightSibling:
        case SubopKind::HasChildren: {
            std::optional<bool> r = do_predicate(op);
            trace_.push_back({op, r});
            ++subop_count_;
            ++forest_.costs_.extract_min_subops;
            return r;
        }
        case SubopKind::Compare: {
            bool r = do_compare(op.a, op.b);
            trace_.push_back({op, r});
            ++subop_count_;
            ++forest_.costs_.extract_min_subops;
            return r;
        }
        case SubopKind::Pair: {
            bool inc = do_pair(op.a, op.b);
            trace_.push_back({op, inc});
            ++subop_count_;
            ++forest_.costs_.extract_min_subops;
            ++forest_.costs_.pairings;
            return inc;
        }
        case SubopKind::Unpair:
            do_unpair(op.a);
            break;
        case SubopKind::Set: {
            require_in_range(op.a);
            require_in_range(op.b);
            ptr_[std::size_t(op.a - 1)] = ptr_[std::size_t(op.b - 1)];
            cert_[std::size_t(op.a - 1)].clear();
            break;
        }
        case SubopKind::Swap: {
            require_in_range(op.a);
            require_in_range(op.b);
            std::swap(ptr_[std::size_t(op.a - 1)], ptr_[std::size_t(op.b - 1)]);
            cert_[std::size_t(op.a - 1)].clear();
            cert_[std::size_t(op.b - 1)].clear();
            break;
        }
        case SubopKind::MoveToParent:
        case SubopKind::MoveToLeftmostChild:
        case SubopKind::MoveToRightSibling:
        case SubopKind::MoveToLeftSibling:
            do_move(op);
            break;
        case SubopKind::End:
            do_end();
            break;
    }
    trace_.push_back({op, std::nullopt});
    ++subop_count_;
    ++forest_.costs_.extract_min_subops;
    return std::nullopt;
}

std::optional<bool> ExtractMinSession::do_predicate(const Suboperation& op) {
    require_in_range(op.a);
    NodeId n = node_of(op.a);
    const HeapNode& hn = forest_.nodes_[n];
    SlotCert& cert = cert_[std::size_t(op.a - 1)];
    bool r = false;
    switch (op.kind) {
        case SubopKind::HasParent:
            r = hn.parent != kNoNode;
            cert.has_parent = r;
            break;
        case SubopKind::HasChildren:
            r = !hn.children_rtl.empty();
            cert.has_children = r;
            break;
        case SubopKind::HasLeftSibling:
        case SubopKind::HasRightSibling: {
            const std::vector<NodeId>& sibs = hn.parent == kNoNode
                                                  ? forest_.roots_rtl_
                                                  : forest_.nodes_[hn.parent].children_rtl;
            auto it = std::find(sibs.begin(), sibs.end(), n);
            // Right-to-left storage: the left sibling sits one index later.
            if (op.kind == SubopKind::HasLeftSibling) {
                r = it + 1 != sibs.end();
                cert.has_left = r;
            } else {
                r = it != sibs.begin();
                cert.has_right = r;
            }
            break;
        }
        default:
            break;
    }
    return r;
}

bool ExtractMinSession::do_compare(int i, int j) {
    require_in_range(i);
    require_in_range(j);
    NodeId a = node_of(i), b = node_of(j);
    bool r = key_leq(forest_.nodes_[a].key, forest_.nodes_[b].key);
    // Record the order fact about the nodes; with a total order, a "false"
    // answer certifies the opposite strict inequality.
    if (a != b) {
        if (r)
            less_certified_.insert({a, b});
        else
            less_certified_.insert({b, a});
    }
    return r;
}

bool ExtractMinSession::do_pair(int i, int j) {
    require_in_range(i);
    require_in_range(j);
    NodeId a = node_of(i), b = node_of(j);
    const SlotCert& ca = cert_[std::size_t(i - 1)];
    const SlotCert& cb = cert_[std::size_t(j - 1)];

    if (a == b) fail(ErrorCode::PreconditionViolated, "pairing a node with itself");
    if (forest_.nodes_[a].parent != kNoNode)
        fail(ErrorCode::PreconditionViolated, "pair winner is not a root");
    if (forest_.nodes_[b].parent != kNoNode)
        fail(ErrorCode::PreconditionViolated, "pair loser is not a root");
    if (!key_less(forest_.nodes_[a].key, forest_.nodes_[b].key))
        fail(ErrorCode::PreconditionViolated, "pair against key order");
    if (ca.has_parent != std::optional<bool>(false))
        fail(ErrorCode::PreconditionNotVerified, "first pair argument lacks fresh HasParent=false");
    if (cb.has_parent != std::optional<bool>(false))
        fail(ErrorCode::PreconditionNotVerified, "second pair argument lacks fresh HasParent=false");
    if (!less_certified_.count({a, b}))
        fail(ErrorCode::PreconditionNotVerified, "pair without certifying Compare");

    // Neighbours of b in the root list lose it as an adjacent sibling.
    const std::vector<NodeId>& roots = forest_.roots_rtl_;
    auto itb = std::find(roots.begin(), roots.end(), b);
    NodeId b_right = itb == roots.begin() ? kNoNode : *(itb - 1);
    NodeId b_left = itb + 1 == roots.end() ? kNoNode : *(itb + 1);
    NodeId prev_leftmost_child =
        forest_.nodes_[a].children_rtl.empty() ? kNoNode : forest_.nodes_[a].children_rtl.back();

    bool was_marked = forest_.nodes_[a].marked;
    forest_.detach_from_parent(b);
    RankStep step;
    forest_.attach_leftmost_child(a, b, &step);
    forest_.nodes_[b].paired_in_session = true;
    pair_log_.push_back({a, b});
    if (!was_marked && forest_.nodes_[a].marked) newly_marked_.push_back(a);

    invalidate_slots_at(a);
    invalidate_slots_at(b);
    if (b_left != kNoNode) invalidate_slots_at(b_left);
    if (b_right != kNoNode) invalidate_slots_at(b_right);
    if (prev_leftmost_child != kNoNode) invalidate_slots_at(prev_leftmost_child);
    return step.incremental;
}

void ExtractMinSession::do_unpair(int i) {
    require_in_range(i);
    NodeId a = node_of(i);
    HeapNode& an = forest_.nodes_[a];
    if (an.children_rtl.empty())
        fail(ErrorCode::PreconditionViolated, "unpair with no children");
    NodeId c = an.children_rtl.back();
    auto logged = std::find(pair_log_.begin(), pair_log_.end(), std::make_pair(a, c));
    if (logged == pair_log_.end())
        fail(ErrorCode::PreconditionViolated,
             "left child was not attached by Pair in this extract-min");

    pair_log_.erase(logged);
    an.children_rtl.pop_back();
    forest_.nodes_[c].parent = kNoNode;
    forest_.nodes_[c].paired_in_session = false;

    // c re-enters a's sibling list immediately to a's left.
    std::vector<NodeId>& sibs =
        an.parent == kNoNode ? forest_.roots_rtl_ : forest_.nodes_[an.parent].children_rtl;
    auto ita = std::find(sibs.begin(), sibs.end(), a);
    sibs.insert(ita + 1, c);
    forest_.nodes_[c].parent = an.parent;

    NodeId new_leftmost_child = an.children_rtl.empty() ? kNoNode : an.children_rtl.back();
    forest_.refresh_upward(a);

    invalidate_slots_at(a);
    invalidate_slots_at(c);
    if (new_leftmost_child != kNoNode) invalidate_slots_at(new_leftmost_child);
}

void ExtractMinSession::do_move(const Suboperation& op) {
    require_in_range(op.a);
    std::size_t slot = std::size_t(op.a - 1);
    NodeId n = ptr_[slot];
    const HeapNode& hn = forest_.nodes_[n];
    const SlotCert& cert = cert_[slot];
    NodeId dest = kNoNode;

    switch (op.kind) {
        case SubopKind::MoveToParent:
            if (hn.parent == kNoNode)
                fail(ErrorCode::PreconditionViolated, "move to absent parent");
            if (cert.has_parent != std::optional<bool>(true))
                fail(ErrorCode::PreconditionNotVerified, "MoveToParent without fresh HasParent");
            dest = hn.parent;
            break;
        case SubopKind::MoveToLeftmostChild:
            if (hn.children_rtl.empty())
                fail(ErrorCode::PreconditionViolated, "move to absent child");
            if (cert.has_children != std::optional<bool>(true))
                fail(ErrorCode::PreconditionNotVerified,
                     "MoveToLeftmostChild without fresh HasChildren");
            dest = hn.children_rtl.back();
            break;
        case SubopKind::MoveToRightSibling:
        case SubopKind::MoveToLeftSibling: {
            const std::vector<NodeId>& sibs = hn.parent == kNoNode
                                                  ? forest_.roots_rtl_
                                                  : forest_.nodes_[hn.parent].children_rtl;
            auto it = std::find(sibs.begin(), sibs.end(), n);
            if (op.kind == SubopKind::MoveToRightSibling) {
                if (it == sibs.begin())
                    fail(ErrorCode::PreconditionViolated, "move to absent right sibling");
                if (cert.has_right != std::optional<bool>(true))
                    fail(ErrorCode::PreconditionNotVerified,
                         "MoveToRightSibling without fresh HasRightSibling");
                dest = *(it - 1);
            } else {
                if (it + 1 == sibs.end())
                    fail(ErrorCode::PreconditionViolated, "move to absent left sibling");
                if (cert.has_left != std::optional<bool>(true))
                    fail(ErrorCode::PreconditionNotVerified,
                         "MoveToLeftSibling without fresh HasLeftSibling");
                dest = *(it + 1);
            }
            break;
        }
        default:
            break;
    }
    ptr_[slot] = dest;
    cert_[slot].clear();
}

void ExtractMinSession::do_end() {
    if (forest_.roots_rtl_.size() != 1)
        fail(ErrorCode::PreconditionViolated, "End with more than one root");
    NodeId root = forest_.roots_rtl_[0];
    // One register must sit at the root holding all three fresh certificates.
    bool certified = false;
    for (std::size_t s = 0; s < ptr_.size(); ++s) {
        if (ptr_[s] != root) continue;
        const SlotCert& c = cert_[s];
        if (c.has_parent == std::optional<bool>(false) &&
            c.has_left == std::optional<bool>(false) &&
            c.has_right == std::optional<bool>(false)) {
            certified = true;
            break;
        }
    }
    if (!certified)
        fail(ErrorCode::PreconditionNotVerified,
             "End without a register certifying sole-root status");
    ended_ = true;
}

Key ExtractMinSession::finish() {
    if (!ended_) fail(ErrorCode::SessionNotEnded, "finish before End");
    if (finished_) fail(ErrorCode::SessionClosed, "finish called twice");
    NodeId root = forest_.roots_rtl_[0];
    Key removed = forest_.nodes_[root].key;

    for (auto& [winner, loser] : pair_log_) {
        forest_.nodes_[winner].paired_in_session = false;
        forest_.nodes_[loser].paired_in_session = false;
    }

    // Children replace the root, preserving their order.
    std::vector<NodeId> promoted = std::move(forest_.nodes_[root].children_rtl);
    for (NodeId c : promoted) forest_.nodes_[c].parent = kNoNode;
    forest_.roots_rtl_ = std::move(promoted);
    forest_.nodes_[root].alive = false;
    forest_.nodes_[root].children_rtl.clear();
    forest_.live_count_ -= 1;
    forest_.session_active_ = false;
    finished_ = true;
    return removed;
}

std::uint64_t ExtractMinSession::state_hash() const {
    std::uint64_t h = forest_.structural_hash();
    for (std::size_t s = 0; s < ptr_.size(); ++s) {
        fnv(h, ptr_[s]);
        const SlotCert& c = cert_[s];
        auto enc = [](const std::optional<bool>& v) -> std::uint64_t {
            return v.has_value() ? (*v ? 2 : 1) : 0;
        };
        fnv(h, enc(c.has_parent) | (enc(c.has_left) << 2) | (enc(c.has_right) << 4) |
                   (enc(c.has_children) << 6));
    }
    for (const auto& [a, b] : less_certified_) {
        fnv(h, a);
        fnv(h, b);
    }
    for (const auto& [w, l] : pair_log_) {
        fnv(h, w);
        fnv(h, l);
    }
    fnv(h, subop_count_);
    fnv(h, ended_ ? 1 : 0);
    return h;
}

}  // namespace pureheap
