#include "pureheap/forest.hpp"

#include <algorithm>
#include <ostream>

namespace pureheap {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

}  // namespace

Forest::Forest(RankParams params) : params_(params) {
    params_.validate();
}

const HeapNode& Forest::node(NodeId id) const {
    if (!is_live(id)) fail(ErrorCode::StaleHandle, "node " + std::to_string(id) + " is not live");
    return nodes_[id];
}

NodeId Forest::new_node(Key key) {
    HeapNode n;
    n.key = key;
    n.alive = true;
    nodes_.push_back(std::move(n));
    ++live_count_;
    return NodeId(nodes_.size() - 1);
}

NodeId Forest::insert(long long value) {
    if (session_active_) fail(ErrorCode::SessionInProgress, "insert during extract-min");
    NodeId id = new_node(Key{value, false, next_serial_++});
    recompute_mark(id);
    roots_rtl_.push_back(id);
    ++costs_.inserts;
    notify_refresh(id);
    return id;
}

void Forest::detach_from_parent(NodeId id) {
    HeapNode& n = nodes_[id];
    std::vector<NodeId>& sibs =
        n.parent == kNoNode ? roots_rtl_ : nodes_[n.parent].children_rtl;
    auto it = std::find(sibs.begin(), sibs.end(), id);
    sibs.erase(it);
    n.parent = kNoNode;
}

void Forest::place_leftmost_root(NodeId id) {
    nodes_[id].parent = kNoNode;
    roots_rtl_.push_back(id);  // leftmost = highest right-based index
}

long long Forest::restoring_delta(NodeId h) const {
    const HeapNode& n = node(h);
    if (n.key.neg_inf) fail(ErrorCode::InvalidTarget, "restoring delta of a -inf key");
    long long target = -(long long)n.rank();
    long long delta = n.key.value - target;
    if (delta < 0)
        fail(ErrorCode::NegativeDelta, "key below -rank; restoration would increase it");
    return delta;
}

void Forest::decrease_key(NodeId h, long long delta) {
    if (session_active_) fail(ErrorCode::SessionInProgress, "decrease-key during extract-min");
    if (!is_live(h)) fail(ErrorCode::StaleHandle, "decrease-key on removed node");
    if (delta < 0) fail(ErrorCode::NegativeDelta, "negative decrease-key delta");
    NodeId parent = nodes_[h].parent;
    detach_from_parent(h);
    if (!nodes_[h].key.neg_inf) nodes_[h].key.value -= delta;
    recompute_mark(h);
    place_leftmost_root(h);
    ++costs_.decrease_keys;
    if (parent != kNoNode) refresh_upward(parent);
    notify_refresh(h);
}

void Forest::decrease_key_to_neg_inf(NodeId h) {
    if (session_active_) fail(ErrorCode::SessionInProgress, "decrease-key during extract-min");
    if (!is_live(h)) fail(ErrorCode::StaleHandle, "decrease-key on removed node");
    NodeId parent = nodes_[h].parent;
    detach_from_parent(h);
    nodes_[h].key.neg_inf = true;
    recompute_mark(h);
    place_leftmost_root(h);
    ++costs_.decrease_keys;
    if (parent != kNoNode) refresh_upward(parent);
    notify_refresh(h);
}

void Forest::attach_leftmost_child(NodeId parent, NodeId child, RankStep* step) {
    HeapNode& p = nodes_[parent];
    HeapNode& c = nodes_[child];
    c.parent = parent;
    p.children_rtl.push_back(child);
    RankStep s;
    if (!c.marked) {
        if (c.fold.rank > p.fold.rank) ++child_outranked_parent_;
        s = rank_fold_push(p.fold, c.fold.rank, params_);
        p.unmarked_size += c.unmarked_size;
        recompute_mark(parent);
    }
    if (step) *step = s;
    notify_refresh(parent);
}

void Forest::recompute_mark(NodeId id) {
    HeapNode& n = nodes_[id];
    n.marked = !n.key.neg_inf && n.key.value != -(long long)n.fold.rank;
}

void Forest::refresh_node(NodeId id) {
    HeapNode& n = nodes_[id];
    RankFold fold;
    long long size = 1;
    // Children fold right to left; marked children are invisible to rank.
    for (NodeId c : n.children_rtl) {
        const HeapNode& ch = nodes_[c];
        if (ch.marked) continue;
        rank_fold_push(fold, ch.fold.rank, params_);
        size += ch.unmarked_size;
    }
    n.fold = fold;
    n.unmarked_size = size;
    recompute_mark(id);
    notify_refresh(id);
}

void Forest::refresh_upward(NodeId start) {
    for (NodeId u = start; u != kNoNode; u = nodes_[u].parent) refresh_node(u);
}

void Forest::notify_refresh(NodeId id) {
    if (on_rank_refresh) on_rank_refresh(*this, id);
}

NodeId Forest::leftmost_root() const {
    if (roots_rtl_.empty()) fail(ErrorCode::EmptyForest, "no roots");
    return roots_rtl_.back();
}

NodeId Forest::node_at(const Position& pos) const {
    if (pos.is_null()) fail(ErrorCode::InvalidTarget, "null position");
    const std::vector<NodeId>* level = &roots_rtl_;
    NodeId cur = kNoNode;
    for (std::uint32_t idx : pos.path) {
        if (idx >= level->size())
            fail(ErrorCode::InvalidTarget, "position " + pos.to_string() + " out of range");
        cur = (*level)[idx];
        level = &nodes_[cur].children_rtl;
    }
    return cur;
}

Position Forest::position_of(NodeId id) const {
    if (!is_live(id)) fail(ErrorCode::StaleHandle, "position of removed node");
    std::vector<std::uint32_t> rev;
    NodeId cur = id;
    while (true) {
        NodeId parent = nodes_[cur].parent;
        const std::vector<NodeId>& sibs =
            parent == kNoNode ? roots_rtl_ : nodes_[parent].children_rtl;
        auto it = std::find(sibs.begin(), sibs.end(), cur);
        rev.push_back(std::uint32_t(it - sibs.begin()));
        if (parent == kNoNode) break;
        cur = parent;
    }
    Position p;
    p.path.assign(rev.rbegin(), rev.rend());
    return p;
}

long long Forest::subtree_size(NodeId id) const {
    const HeapNode& n = node(id);
    long long total = 1;
    for (NodeId c : n.children_rtl) total += subtree_size(c);
    return total;
}

NodeId Forest::min_root() const {
    if (roots_rtl_.empty()) fail(ErrorCode::EmptyForest, "minimum of empty forest");
    NodeId best = roots_rtl_[0];
    for (NodeId r : roots_rtl_)
        if (key_less(nodes_[r].key, nodes_[best].key)) best = r;
    return best;
}

std::vector<NodeId> Forest::live_nodes() const {
    std::vector<NodeId> out;
    out.reserve((std::size_t)live_count_);
    for (NodeId id = 0; id < nodes_.size(); ++id)
        if (nodes_[id].alive) out.push_back(id);
    return out;
}

std::string Forest::snapshot_structure() const {
    if (session_active_)
        fail(ErrorCode::SessionInProgress, "snapshot while extract-min open");
    return snapshot_structure_unchecked();
}

std::string Forest::snapshot_structure_unchecked() const {
    std::string out;
    // Left-to-right over roots, recursively left-to-right over children.
    auto emit = [&](auto&& self, NodeId id) -> void {
        const HeapNode& n = nodes_[id];
        out += '(';
        out += n.marked ? 'm' : 'u';
        for (auto it = n.children_rtl.rbegin(); it != n.children_rtl.rend(); ++it)
            self(self, *it);
        out += ')';
    };
    for (auto it = roots_rtl_.rbegin(); it != roots_rtl_.rend(); ++it) emit(emit, *it);
    return out;
}

void Forest::write_rank_dump(std::ostream& out) const {
    auto emit = [&](auto&& self, NodeId id) -> void {
        const HeapNode& n = nodes_[id];
        out << "position=" << position_of(id).to_string() << " rank=" << n.fold.rank
            << " marked=" << (n.marked ? 1 : 0) << " eff=";
        bool first = true;
        int unmarked_index = 0;
        for (const ChildRankInfo& c : child_rank_details(id)) {
            ++unmarked_index;
            if (!c.efficient) continue;
            if (!first) out << ",";
            out << unmarked_index;
            first = false;
        }
        out << "\n";
        for (auto it = n.children_rtl.rbegin(); it != n.children_rtl.rend(); ++it)
            self(self, *it);
    };
    for (auto it = roots_rtl_.rbegin(); it != roots_rtl_.rend(); ++it) emit(emit, *it);
}

std::vector<ChildRankInfo> Forest::child_rank_details(NodeId id) const {
    const HeapNode& n = node(id);
    std::vector<ChildRankInfo> out;
    RankFold fold;
    for (std::uint32_t i = 0; i < n.children_rtl.size(); ++i) {
        const HeapNode& ch = nodes_[n.children_rtl[i]];
        if (ch.marked) continue;
        ChildRankInfo info;
        info.child = n.children_rtl[i];
        info.rtl_index = i;
        info.child_rank = ch.fold.rank;
        info.running_rank_before = fold.rank;
        RankStep s = rank_fold_push(fold, ch.fold.rank, params_);
        info.efficient = s.efficient;
        info.incremental = s.incremental;
        out.push_back(info);
    }
    return out;
}

int Forest::count_efficient_children(NodeId id) const {
    int n = 0;
    for (const ChildRankInfo& c : child_rank_details(id))
        if (c.efficient) ++n;
    return n;
}

std::vector<int> Forest::noninc_indices(NodeId id, int i) const {
    std::vector<ChildRankInfo> details = child_rank_details(id);
    if (i < 1 || std::size_t(i) > details.size())
        fail(ErrorCode::InvalidTarget, "unmarked child index out of range");
    // Walk right from y_{i-1} to the first incremental element; the run is
    // everything after it, up to and including y_i.
    int j = 0;
    for (int k = i - 1; k >= 1; --k) {
        if (details[std::size_t(k - 1)].incremental) {
            j = k;
            break;
        }
    }
    std::vector<int> out;
    for (int k = j + 1; k <= i; ++k) out.push_back(k);
    return out;
}

bool Forest::fold_cache_consistent(NodeId id) const {
    const HeapNode& n = node(id);
    RankFold fold;
    long long size = 1;
    for (NodeId c : n.children_rtl) {
        const HeapNode& ch = nodes_[c];
        if (ch.marked) continue;
        rank_fold_push(fold, ch.fold.rank, params_);
        size += ch.unmarked_size;
    }
    return fold == n.fold && size == n.unmarked_size;
}

std::uint64_t Forest::structural_hash() const {
    std::uint64_t h = kFnvOffset;
    auto walk = [&](auto&& self, NodeId id) -> void {
        const HeapNode& n = nodes_[id];
        fnv(h, 0x28);
        fnv(h, std::uint64_t(n.key.value));
        fnv(h, n.key.neg_inf ? 1 : 0);
        fnv(h, n.key.serial);
        fnv(h, n.marked ? 1 : 0);
        fnv(h, n.paired_in_session ? 1 : 0);
        for (auto it = n.children_rtl.rbegin(); it != n.children_rtl.rend(); ++it)
            self(self, *it);
        fnv(h, 0x29);
    };
    for (auto it = roots_rtl_.rbegin(); it != roots_rtl_.rend(); ++it) walk(walk, *it);
    return h;
}

void Forest::validate() const {
    long long seen = 0;
    auto walk = [&](auto&& self, NodeId id, NodeId parent) -> void {
        const HeapNode& n = nodes_[id];
        if (!n.alive) fail(ErrorCode::StaleHandle, "dead node linked into forest");
        if (n.parent != parent) fail(ErrorCode::StaleHandle, "parent pointer mismatch");
        ++seen;
        for (NodeId c : n.children_rtl) {
            if (!key_less(n.key, nodes_[c].key))
                fail(ErrorCode::StaleHandle, "heap order violated");
            self(self, c, id);
        }
    };
    for (NodeId r : roots_rtl_) walk(walk, r, kNoNode);
    if (seen != live_count_) fail(ErrorCode::StaleHandle, "live count mismatch");
}

}  // namespace pureheap
