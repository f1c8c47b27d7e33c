#include "pureheap/monotone.hpp"

#include <map>
#include <random>

namespace pureheap {

namespace {

struct ReplayState {
    Forest forest;
    std::vector<NodeId> by_ordinal;
    std::vector<long long> ordinal_of;  // NodeId -> ordinal
    std::vector<bool> dead;

    explicit ReplayState(const RankParams& p) : forest(p) {}

    std::size_t resolve(long long target) const {
        if (target < 0 || target >= (long long)by_ordinal.size())
            fail(ErrorCode::InvalidWorkload,
                 "decrease-key ordinal out of range: " + std::to_string(target));
        if (dead[(std::size_t)target])
            fail(ErrorCode::InvalidWorkload,
                 "decrease-key on removed ordinal: " + std::to_string(target));
        return (std::size_t)target;
    }

    void record_insert(NodeId h) {
        if (ordinal_of.size() <= h) ordinal_of.resize(h + 1, -1);
        ordinal_of[h] = (long long)by_ordinal.size();
        by_ordinal.push_back(h);
        dead.push_back(false);
    }
};

}  // namespace

MonotoneReport check_monotone_rank(const Workload& w, const ExtractMinProgram& program,
                                   const RankParams& params) {
    // Pass 1: record which node each extract-min removes.
    std::vector<long long> em_victims;
    {
        ReplayState st(params);
        for (const SeqOp& op : w) {
            switch (op.kind) {
                case SeqOp::Insert: st.record_insert(st.forest.insert(op.value)); break;
                case SeqOp::DecreaseKey:
                    st.forest.decrease_key(st.by_ordinal[st.resolve(op.target)], op.delta);
                    break;
                case SeqOp::DecreaseKeyNegInf:
                    st.forest.decrease_key_to_neg_inf(st.by_ordinal[st.resolve(op.target)]);
                    break;
                case SeqOp::ExtractMin: {
                    if (st.forest.empty())
                        fail(ErrorCode::InvalidWorkload, "extract-min on empty forest");
                    ExtractMinOutcome out = run_extract_min(st.forest, program);
                    long long v = st.ordinal_of[out.victim];
                    em_victims.push_back(v);
                    st.dead[(std::size_t)v] = true;
                    break;
                }
            }
        }
    }

    // next_victim[t]: ordinal the first extract-min at index >= t removes.
    std::vector<long long> next_victim(w.size() + 1, -1);
    {
        long long pending = -1;
        std::size_t em_seen = em_victims.size();
        for (std::size_t t = w.size(); t-- > 0;) {
            if (w[t].kind == SeqOp::ExtractMin) pending = em_victims[--em_seen];
            next_victim[t] = pending;
        }
    }

    // Pass 2: validate decrease-key targets and watch ranks at boundaries.
    MonotoneReport report;
    ReplayState st(params);
    std::map<long long, int> prev_ranks;  // ordinal -> rank at the previous boundary
    auto boundary = [&](std::size_t t) {
        std::map<long long, int> now;
        for (NodeId h : st.forest.live_nodes()) now[st.ordinal_of[h]] = st.forest.node(h).rank();
        for (const auto& [ordinal, rank_before] : prev_ranks) {
            auto it = now.find(ordinal);
            if (it == now.end()) continue;  // removed inside the step
            // The designated minimum root may lose rank; everyone else may not.
            if (t > 0 && next_victim[t - 1] == ordinal) continue;
            ++report.boundaries_checked;
            if (it->second < rank_before)
                report.decreases.push_back(
                    {(long long)t, ordinal, rank_before, it->second});
        }
        prev_ranks = std::move(now);
    };

    boundary(0);
    for (std::size_t t = 0; t < w.size(); ++t) {
        const SeqOp& op = w[t];
        switch (op.kind) {
            case SeqOp::Insert: st.record_insert(st.forest.insert(op.value)); break;
            case SeqOp::DecreaseKey:
            case SeqOp::DecreaseKeyNegInf: {
                std::size_t ord = st.resolve(op.target);
                NodeId h = st.by_ordinal[ord];
                const HeapNode& n = st.forest.node(h);
                bool is_root = n.parent == kNoNode;
                bool child_of_designated =
                    n.parent != kNoNode && next_victim[t] >= 0 &&
                    st.by_ordinal[(std::size_t)next_victim[t]] == n.parent;
                if (!is_root && !n.marked && !child_of_designated)
                    fail(ErrorCode::NonMonotonicInput,
                         "decrease-key on unmarked internal node (ordinal " +
                             std::to_string(op.target) + ") outside the designated root");
                if (op.kind == SeqOp::DecreaseKey)
                    st.forest.decrease_key(h, op.delta);
                else
                    st.forest.decrease_key_to_neg_inf(h);
                break;
            }
            case SeqOp::ExtractMin: {
                ExtractMinOutcome out = run_extract_min(st.forest, program);
                st.dead[(std::size_t)st.ordinal_of[out.victim]] = true;
                break;
            }
        }
        ++report.operations;
        boundary(t + 1);
    }
    return report;
}

Workload generate_monotone_workload(int steps, const RankParams& params,
                                    const ExtractMinProgram& program, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ReplayState st(params);
    Workload w;

    auto do_insert = [&] {
        long long v = (long long)(rng() % 24);
        w.push_back({SeqOp::Insert, v, 0, 0});
        st.record_insert(st.forest.insert(v));
    };
    auto do_dk = [&](NodeId h, long long delta) {
        w.push_back({SeqOp::DecreaseKey, 0, st.ordinal_of[h], delta});
        st.forest.decrease_key(h, delta);
    };
    auto do_em = [&] {
        w.push_back({SeqOp::ExtractMin, 0, 0, 0});
        ExtractMinOutcome out = run_extract_min(st.forest, program);
        st.dead[(std::size_t)st.ordinal_of[out.victim]] = true;
    };

    for (int step = 0; step < steps; ++step) {
        int r = int(rng() % 100);
        if (r < 40 || st.forest.empty()) {
            do_insert();
        } else if (r < 60) {
            const auto& roots = st.forest.roots_rtl();
            do_dk(roots[rng() % roots.size()], (long long)(rng() % 8));
        } else if (r < 75) {
            std::vector<NodeId> marked;
            for (NodeId h : st.forest.live_nodes())
                if (st.forest.node(h).marked) marked.push_back(h);
            if (marked.empty())
                do_insert();
            else
                do_dk(marked[rng() % marked.size()], (long long)(rng() % 8));
        } else if (r < 90) {
            // Designate a node, push some of its children out, extract.  The
            // designating decrease itself must obey the definition, so the
            // candidate pool is roots plus marked nodes.
            std::vector<NodeId> pool = st.forest.roots_rtl();
            for (NodeId h : st.forest.live_nodes())
                if (st.forest.node(h).marked && st.forest.node(h).parent != kNoNode)
                    pool.push_back(h);
            NodeId x = pool[rng() % pool.size()];
            w.push_back({SeqOp::DecreaseKeyNegInf, 0, st.ordinal_of[x], 0});
            st.forest.decrease_key_to_neg_inf(x);
            int kicks = int(rng() % 3);
            for (int i = 0; i < kicks; ++i) {
                const auto& children = st.forest.node(x).children_rtl;
                if (children.empty()) break;
                do_dk(children[rng() % children.size()], (long long)(rng() % 8));
            }
            do_em();
        } else {
            do_em();
        }
    }
    return w;
}

}  // namespace pureheap
