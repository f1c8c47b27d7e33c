#include "pureheap/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pureheap/enumerate.hpp"
#include "pureheap/monotone.hpp"
#include "pureheap/subop.hpp"

namespace pureheap {

namespace {

// log2 of C(total, chosen); 0 when the binomial degenerates.
double log2_binomial(long long total, long long chosen) {
    if (chosen <= 0 || total <= 0 || chosen > total) return 0;
    double s = 0;
    for (long long i = 1; i <= chosen; ++i)
        s += std::log2(double(total - chosen + i)) - std::log2(double(i));
    return s;
}

// From-scratch rank of a subtree: no cached fold or size is consulted, so
// comparing the result against the caches is a genuine differential test.
struct RecomputedRank {
    RankFold fold;
    long long unmarked_size = 1;
    bool marked = false;
};

RecomputedRank recompute_rank(const Forest& f, NodeId id) {
    const HeapNode& n = f.node(id);
    RecomputedRank r;
    for (NodeId c : n.children_rtl) {
        RecomputedRank cr = recompute_rank(f, c);
        if (cr.marked) continue;
        rank_fold_push(r.fold, cr.fold.rank, f.params());
        r.unmarked_size += cr.unmarked_size;
    }
    r.marked = !n.key.neg_inf && n.key.value != -(long long)r.fold.rank;
    return r;
}

void differential_rank_check(const Forest& f, NodeId id) {
    if (!f.is_live(id)) return;  // refreshes may be reported for a removed victim
    RecomputedRank r = recompute_rank(f, id);
    const HeapNode& n = f.node(id);
    if (!(r.fold == n.fold) || r.unmarked_size != n.unmarked_size || r.marked != n.marked)
        fail(ErrorCode::PreconditionUnmet,
             "incremental rank diverged from recomputation at node " + std::to_string(id));
}

// Non-throwing position walk; kNoNode when the path dangles.
NodeId find_at(const Forest& f, const Position& pos) {
    if (pos.is_null()) return kNoNode;
    if (pos.path[0] >= f.roots_rtl().size()) return kNoNode;
    NodeId cur = f.roots_rtl()[pos.path[0]];
    for (std::size_t i = 1; i < pos.path.size(); ++i) {
        const std::vector<NodeId>& ch = f.node(cur).children_rtl;
        if (pos.path[i] >= ch.size()) return kNoNode;
        cur = ch[pos.path[i]];
    }
    return cur;
}

bool boundary_clean(const Forest& f, long long n) {
    if (f.size() != n) return false;
    for (NodeId id : f.live_nodes())
        if (f.node(id).marked) return false;
    return true;
}

void config_rows(Report& r, const AdversaryConfig& c) {
    r.add("n", c.n);
    r.add("k", (long long)c.k);
    r.add("mode", std::string(c.mode == AdvMode::Exact ? "exact" : "ledger"));
    r.add("algorithm", c.algorithm);
    r.add("d", (long long)c.params.d);
    r.add("W", (long long)c.params.W);
    r.add("T", c.params.T);
    r.add("rho", (long long)c.rho);
    r.add("q", (long long)c.q);
    r.add("m", (long long)c.m);
    r.add("exact_cap", c.exact_cap);
    r.add("branch_cap", c.branch_cap);
    r.add("check_monotone", (long long)(c.check_monotone ? 1 : 0));
    r.add("differential_rank", (long long)(c.differential_rank ? 1 : 0));
}

}  // namespace

void AdversaryConfig::validate() const {
    params.validate();
    if (n < 1) fail(ErrorCode::ParseError, "n must be positive");
    if (k < 0) fail(ErrorCode::ParseError, "round count must be nonnegative");
    if (rho < 2) fail(ErrorCode::ParseError, "the stock programs need at least two registers");
    if (q < 0) fail(ErrorCode::ParseError, "q must be nonnegative");
    if (m < 1) fail(ErrorCode::ParseError, "m must be positive");
    if (exact_cap < 1) fail(ErrorCode::ParseError, "exact_cap must be positive");
    if (branch_cap < 1) fail(ErrorCode::ParseError, "branch_cap must be positive");
}

Report AdversaryConfig::to_report() const {
    Report r;
    config_rows(r, *this);
    return r;
}

AdversaryConfig AdversaryConfig::from_report(const Report& rep) {
    AdversaryConfig c;
    if (rep.has("n")) c.n = rep.get_int("n");
    if (rep.has("k")) c.k = (int)rep.get_int("k");
    if (rep.has("mode")) {
        const std::string& m = rep.get("mode");
        if (m == "exact")
            c.mode = AdvMode::Exact;
        else if (m == "ledger")
            c.mode = AdvMode::Ledger;
        else
            fail(ErrorCode::ParseError, "unknown mode: " + m);
    }
    if (rep.has("algorithm")) c.algorithm = rep.get("algorithm");
    if (rep.has("d")) c.params.d = (int)rep.get_int("d");
    if (rep.has("W")) c.params.W = (int)rep.get_int("W");
    if (rep.has("T") && rep.has("a"))
        fail(ErrorCode::ParseError, "give the run length as T or as the exponent a, not both");
    if (rep.has("T"))
        c.params.T = rep.get_int("T");
    else if (rep.has("a"))
        c.params = RankParams::from_exponent(c.params.d, c.params.W, (int)rep.get_int("a"));
    if (rep.has("rho")) c.rho = (int)rep.get_int("rho");
    if (rep.has("q")) c.q = (int)rep.get_int("q");
    if (rep.has("m")) c.m = (int)rep.get_int("m");
    if (rep.has("exact_cap")) c.exact_cap = rep.get_int("exact_cap");
    if (rep.has("branch_cap")) c.branch_cap = rep.get_int("branch_cap");
    if (rep.has("check_monotone")) c.check_monotone = rep.get_int("check_monotone") != 0;
    if (rep.has("differential_rank")) c.differential_rank = rep.get_int("differential_rank") != 0;
    c.validate();
    return c;
}

Report AdversaryRunReport::to_report() const {
    Report r;
    r.add_comment("adversary run report");
    config_rows(r, config);
    r.add_blank();
    r.add("rounds", (long long)rounds.size());
    r.add("final_count", final_count);
    r.add("degraded", (long long)(degraded ? 1 : 0));
    r.add("distinctness", distinctness);
    r.add("bound_distinctness", bound_distinctness);
    r.add("cost_initial", cost_initial);
    r.add("cost_rounds", cost_rounds);
    r.add("eq1_rhs", eq1_rhs);
    r.add("eq1_exact", (long long)(eq1_exact ? 1 : 0));
    r.add("sum_vs", sum_vs);
    r.add("pairings", pairings);
    r.add("eq2_holds", (long long)(eq2_holds ? 1 : 0));
    r.add("small_rounds", small_rounds);
    r.add("fraction_small", fraction_small);
    r.add("fracsmall_holds", (long long)(fracsmall_holds ? 1 : 0));
    r.add("boundaries_clean", (long long)(boundaries_clean ? 1 : 0));
    r.add("subdistinct_clean", (long long)(subdistinct_clean ? 1 : 0));
    r.add("victims_clean", (long long)(victims_clean ? 1 : 0));
    r.add("maxdistinct_ok", (long long)(maxdistinct_ok ? 1 : 0));
    r.add("monotone_clean", (long long)(monotone_clean ? 1 : 0));
    r.add("monotone_decreases", monotone_decreases);
    r.add("permutable_short", permutable_short);
    r.add("child_outranked_parent", child_outranked_parent);
    r.add_blank();
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const RoundRecord& rec = rounds[i];
        std::string p = "round." + std::to_string(i) + ".";
        r.add(p + "kind", std::string(rec.small ? "small" : "big"));
        r.add(p + "p", rec.p);
        r.add(p + "root_count", rec.root_count);
        r.add(p + "child_count", rec.child_count);
        r.add(p + "acem", rec.acem);
        r.add(p + "vs", rec.vs);
        r.add(p + "dc", rec.dc);
        r.add(p + "cost", rec.cost());
        std::string vio;
        for (const std::string& v : rec.violations) {
            if (!vio.empty()) vio += ' ';
            vio += v;
        }
        r.add(p + "violations", vio.empty() ? "-" : vio);
        r.add(p + "count_after", rec.count_after);
        r.add(p + "bound_delta", rec.distinctness_delta);
    }
    r.add_blank();
    for (std::size_t i = 0; i < trail.size(); ++i) {
        std::string p = "trail." + std::to_string(i) + ".";
        r.add(p + "evolution", trail[i].evolution);
        r.add(p + "count", trail[i].count);
        r.add(p + "bound", trail[i].bound);
    }
    return r;
}

Adversary::Adversary(const AdversaryConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const AlgorithmInfo* alg = find_algorithm(cfg_.algorithm);
    if (!alg) fail(ErrorCode::ParseError, "unknown algorithm: " + cfg_.algorithm);
    program_ = alg->program;
    log2_two_sigma_ = std::log2(2.0 * double(subop_alphabet_size(cfg_.rho)));
    SequenceMember seed;
    seed.forest = Forest(cfg_.params);
    if (cfg_.differential_rank) seed.forest.on_rank_refresh = differential_rank_check;
    for (long long i = 0; i < cfg_.n; ++i) {
        seed.forest.insert(0);
        seed.ops.push_back({SeqOp::Insert, 0, 0, 0});
    }
    members_.push_back(std::move(seed));
    trail_.push_back({"init", count(), bound_d_});
}

double Adversary::distinctness() const {
    if (degraded_) return bound_d_;
    return std::log2(double(members_.size()));
}

NodeId Adversary::resolve(const SequenceMember& m, const Position& pos) const {
    return m.forest.node_at(pos);
}

void Adversary::require_no_pending(const char* evolution) const {
    if (dmr_pending_)
        fail(ErrorCode::OrderViolation,
             std::string("a designated minimum root obliges an extract-min next, not ") +
                 evolution);
}

void Adversary::note_evolution(const std::string& name, double bound_delta) {
    bound_d_ += bound_delta;
    long long c = count();
    if (c > 0 && !members_.empty()) {
        // No materialized set may outgrow the count of distinct marked
        // shapes on this many nodes.
        long long sz = members_.front().forest.size();
        if (sz >= 1) {
            double ceiling = double(sz);
            ceiling += (sz <= 35) ? std::log2(double(catalan_recurrence((int)sz)))
                                  : 2.0 * double(sz);
            if (std::log2(double(c)) > ceiling + 1e-9) {
                if (cfg_.mode == AdvMode::Exact)
                    fail(ErrorCode::PreconditionUnmet,
                         "materialized set exceeded the marked-shape ceiling");
                maxdistinct_ok_ = false;
            }
        }
    }
    trail_.push_back({name, c, bound_d_});
}

void Adversary::exact_asserts(const std::string& evolution) {
    if (cfg_.mode != AdvMode::Exact) return;
    std::set<std::string> snaps;
    for (const SequenceMember& m : members_) snaps.insert(m.forest.snapshot_structure());
    if (snaps.size() != members_.size())
        fail(ErrorCode::PreconditionUnmet, "terminal structures collided after " + evolution);
}

void Adversary::checkpoint(const std::string& stage) {
    if (on_checkpoint) on_checkpoint(members_.front().forest, stage);
}

double Adversary::em_charge(long long acem) const {
    return double(acem) * log2_two_sigma_;
}

double Adversary::big_small_charge() const {
    double nn = double(members_.front().forest.size());
    if (nn < 2) return 0;
    double fl = cfg_.f() * std::log2(nn);
    double s = nn / std::max(fl, 1e-9);
    double a1 = std::max(std::ceil(fl), 1.0);
    double a2 = std::max(std::ceil(cfg_.f() * std::log2(std::max(s, 1.0))), 1.0);
    return std::log2(a1 * a1 * a2);
}

void Adversary::evolve_insert() {
    require_no_pending("insert");
    for (SequenceMember& m : members_) {
        m.forest.insert(0);
        m.ops.push_back({SeqOp::Insert, 0, 0, 0});
    }
    note_evolution("insert", 0);
    exact_asserts("insert");
}

void Adversary::evolve_decrease_key(const Position& pos, bool to_neg_inf) {
    require_no_pending("decrease-key");
    std::vector<NodeId> ids;
    ids.reserve(members_.size());
    for (const SequenceMember& m : members_) {
        NodeId id = resolve(m, pos);
        const HeapNode& n = m.forest.node(id);
        if (n.parent != kNoNode && !n.marked)
            fail(ErrorCode::InvalidTarget,
                 "decrease-key target " + pos.to_string() + " is neither a root nor marked");
        if (!to_neg_inf && n.key.neg_inf)
            fail(ErrorCode::InvalidTarget,
                 "cannot restore a negative-infinity key at " + pos.to_string());
        ids.push_back(id);
    }
    std::size_t i = 0;
    for (SequenceMember& m : members_) {
        NodeId id = ids[i++];
        if (to_neg_inf) {
            m.forest.decrease_key_to_neg_inf(id);
            m.pending_victim = id;
            m.ops.push_back({SeqOp::DecreaseKeyNegInf, 0, (long long)id, 0});
        } else {
            // The restoring delta is a property of each member's own forest.
            long long delta = m.forest.restoring_delta(id);
            m.forest.decrease_key(id, delta);
            m.ops.push_back({SeqOp::DecreaseKey, 0, (long long)id, delta});
        }
    }
    note_evolution(to_neg_inf ? "decrease-key-neg-inf" : "decrease-key", 0);
    exact_asserts("decrease-key");
}

void Adversary::evolve_designated_min_root(const Position& pos) {
    require_no_pending("designated-minimum-root");
    std::vector<NodeId> ids;
    ids.reserve(members_.size());
    for (const SequenceMember& m : members_) {
        NodeId id = resolve(m, pos);
        if (m.forest.node(id).parent != kNoNode)
            fail(ErrorCode::InvalidTarget,
                 "designated minimum root " + pos.to_string() + " is not a root");
        ids.push_back(id);
    }
    std::size_t i = 0;
    for (SequenceMember& m : members_) {
        NodeId id = ids[i++];
        m.forest.decrease_key_to_neg_inf(id);
        m.pending_victim = id;
        m.ops.push_back({SeqOp::DecreaseKeyNegInf, 0, (long long)id, 0});
    }
    dmr_pending_ = true;
    note_evolution("designated-minimum-root", 0);
    exact_asserts("designated-minimum-root");
}

ExtractMinEvolution Adversary::evolve_extract_min() {
    dmr_pending_ = false;
    for (const SequenceMember& m : members_)
        if (m.forest.empty()) fail(ErrorCode::EmptyForest, "extract-min evolution on an empty forest");

    struct Ran {
        SequenceMember member;
        ExtractMinOutcome out;
    };
    std::vector<Ran> ran;
    ran.reserve(members_.size());
    for (SequenceMember& m : members_) {
        ExtractMinOutcome out = run_extract_min(m.forest, program_, cfg_.rho);
        m.ops.push_back({SeqOp::ExtractMin, 0, 0, 0});
        m.last_em_trace = out.trace;
        ran.push_back({std::move(m), std::move(out)});
    }

    // Suboperation-position majority pruning.  At each position every alive
    // member must have issued the same suboperation (the program saw an
    // identical answer prefix), so at most two encodings appear — the two
    // boolean answers — and the majority side keeps at least half.
    std::vector<std::size_t> alive(ran.size());
    std::iota(alive.begin(), alive.end(), 0);
    std::size_t j = 0;
    for (;;) {
        for (std::size_t idx : alive)
            if (j >= ran[idx].out.trace.size())
                fail(ErrorCode::ReplayDivergence, "program ended early in a surviving sequence");
        struct Form {
            TraceEntry entry;
            long long n = 0;
        };
        std::map<std::uint32_t, Form> forms;
        for (std::size_t idx : alive) {
            const TraceEntry& e = ran[idx].out.trace[j];
            Form& f = forms[e.encode()];
            f.entry = e;
            ++f.n;
        }
        if (forms.size() > 2)
            fail(ErrorCode::ReplayDivergence,
                 "sequences diverged beyond a boolean answer at suboperation " + std::to_string(j));
        if (forms.size() == 2) {
            const Suboperation& x = forms.begin()->second.entry.op;
            const Suboperation& y = std::next(forms.begin())->second.entry.op;
            if (x.kind != y.kind || x.a != y.a || x.b != y.b)
                fail(ErrorCode::ReplayDivergence,
                     "sequences issued different suboperations at position " + std::to_string(j));
        }
        std::uint32_t best = 0;
        long long best_n = -1;
        for (const auto& [code, form] : forms)
            if (form.n > best_n) {
                best = code;
                best_n = form.n;
            }
        std::vector<std::size_t> next;
        next.reserve(alive.size());
        for (std::size_t idx : alive)
            if (ran[idx].out.trace[j].encode() == best) next.push_back(idx);
        if (2 * next.size() < alive.size())
            fail(ErrorCode::ReplayDivergence, "majority pruning dropped more than half");
        alive.swap(next);
        ++j;
        if (ran[alive.front()].out.trace[j - 1].op.kind == SubopKind::End) break;
    }
    long long acem = (long long)j;

    members_.clear();
    ExtractMinEvolution ev;
    ev.acem = acem;
    std::vector<Position> ref_vio;
    bool first = true;
    for (std::size_t idx : alive) {
        Ran& r = ran[idx];
        if (r.member.pending_victim != kNoNode && r.out.victim != r.member.pending_victim)
            victims_clean_ = false;
        r.member.pending_victim = kNoNode;
        if ((long long)r.out.trace.size() != acem)
            fail(ErrorCode::ReplayDivergence, "surviving traces have unequal lengths");
        std::vector<Position> vio;
        for (NodeId nm : r.out.newly_marked)
            if (r.member.forest.is_live(nm) && r.member.forest.node(nm).marked)
                vio.push_back(r.member.forest.position_of(nm));
        std::sort(vio.begin(), vio.end());
        if (first) {
            ref_vio = vio;
            first = false;
        } else if (!(vio == ref_vio)) {
            subdistinct_clean_ = false;
        }
        members_.push_back(std::move(r.member));
    }
    ev.violations = ref_vio;

    note_evolution("extract-min", -em_charge(acem));
    exact_asserts("extract-min");
    return ev;
}

BigSmallOutcome Adversary::evolve_big_small() {
    require_no_pending("big-small");
    double nn = double(members_.front().forest.size());
    if (nn < 1) fail(ErrorCode::EmptyForest, "big-small evolution on an empty forest");
    double fl = cfg_.f() * std::log2(std::max(nn, 2.0));
    double s = nn / std::max(fl, 1e-9);
    double child_limit = cfg_.f() * std::log2(s);

    struct Cls {
        bool many_roots = false;
        long long rc = 0;
        std::uint32_t p_index = 0;
        bool many_children = false;
        long long cc = 0;
        std::vector<long long> key() const {
            if (many_roots) return {1};
            if (many_children) return {0, rc, (long long)p_index, 1};
            return {0, rc, (long long)p_index, 0, cc};
        }
    };
    std::vector<Cls> cls(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Forest& f = members_[i].forest;
        Cls& c = cls[i];
        c.rc = (long long)f.roots_rtl().size();
        if (double(c.rc) > fl) {
            c.many_roots = true;
            continue;
        }
        // Largest subtree wins; ties go left, i.e. to the higher right-based
        // index, so iterating rightward-to-leftward with >= settles it.
        long long best_sz = -1;
        for (std::size_t r = 0; r < f.roots_rtl().size(); ++r) {
            long long sz = f.subtree_size(f.roots_rtl()[r]);
            if (sz >= best_sz) {
                best_sz = sz;
                c.p_index = (std::uint32_t)r;
            }
        }
        c.cc = (long long)f.node(f.roots_rtl()[c.p_index]).children_rtl.size();
        if (double(c.cc) >= child_limit) c.many_children = true;
    }

    std::map<std::vector<long long>, long long> freq;
    for (const Cls& c : cls) ++freq[c.key()];
    const std::vector<long long>* best_key = nullptr;
    long long best_n = -1;
    for (const auto& [key, cnt] : freq)
        if (cnt > best_n) {
            best_key = &key;
            best_n = cnt;
        }
    Cls chosen;
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (cls[i].key() == *best_key) {
            chosen = cls[i];
            break;
        }
    std::vector<SequenceMember> next;
    next.reserve((std::size_t)best_n);
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (cls[i].key() == *best_key) next.push_back(std::move(members_[i]));
    members_.swap(next);

    note_evolution("big-small", -big_small_charge());
    exact_asserts("big-small");

    BigSmallOutcome out;
    if (!chosen.many_roots) {
        out.p = Position{{chosen.p_index}};
        out.small = !chosen.many_children;
    }
    return out;
}

long long Adversary::evolve_permute() {
    require_no_pending("permute");
    double nn = double(members_.front().forest.size());
    double fl = cfg_.f() * std::log2(std::max(nn, 2.0));
    double s = nn / std::max(fl, 1e-9);
    double child_limit = cfg_.f() * std::log2(s);

    // The permuted subset: the rightmost efficiently linked child of each
    // distinct rank under the leftmost root.
    struct Pick {
        std::vector<NodeId> ids;
        std::string key;
    };
    std::vector<Pick> picks(members_.size());
    long long cc_rep = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Forest& f = members_[i].forest;
        for (NodeId id : f.live_nodes())
            if (f.node(id).marked)
                fail(ErrorCode::PreconditionUnmet, "permute requires a fully unmarked forest");
        NodeId r = f.leftmost_root();
        const HeapNode& root = f.node(r);
        if (double(root.unmarked_size) + 1e-9 < s)
            fail(ErrorCode::PreconditionUnmet,
                 "the leftmost root's subtree is below the permute size floor");
        long long cc = (long long)root.children_rtl.size();
        if (double(cc) >= child_limit)
            fail(ErrorCode::PreconditionUnmet, "the leftmost root has too many children to permute");
        if (i == 0) cc_rep = cc;
        std::set<int> seen;
        Pick& pk = picks[i];
        for (const ChildRankInfo& ci : f.child_rank_details(r)) {
            if (!ci.efficient) continue;
            if (!seen.insert(ci.child_rank).second) continue;
            pk.ids.push_back(ci.child);
            if (!pk.key.empty()) pk.key += '|';
            pk.key += f.position_of(ci.child).to_string();
        }
    }

    // Majority over the location vector commits every survivor to the same
    // permuted positions.
    std::map<std::string, long long> freq;
    for (const Pick& pk : picks) ++freq[pk.key];
    const std::string* best_key = nullptr;
    long long best_n = -1;
    for (const auto& [key, cnt] : freq)
        if (cnt > best_n) {
            best_key = &key;
            best_n = cnt;
        }
    {
        std::vector<SequenceMember> kept;
        std::vector<Pick> kept_picks;
        kept.reserve((std::size_t)best_n);
        kept_picks.reserve((std::size_t)best_n);
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (picks[i].key == *best_key) {
                kept.push_back(std::move(members_[i]));
                kept_picks.push_back(std::move(picks[i]));
            }
        members_.swap(kept);
        picks.swap(kept_picks);
    }

    long long g_avail = (long long)picks.front().ids.size();
    double g_req =
        (cfg_.g() * std::log2(std::max(s, 1.0))) / (double(cfg_.params.W + 1) * double(cfg_.params.w()));
    if (double(g_avail) + 1e-9 < g_req) ++permutable_short_;

    long long q_target;
    if (cfg_.q > 0) {
        q_target = cfg_.q;
    } else if (cfg_.mode == AdvMode::Exact) {
        q_target = std::min<long long>(g_avail, 5);
    } else {
        double denom = std::max(std::log2(double(cfg_.params.d)), 1.0);
        q_target = (long long)std::ceil(double(cfg_.m) * std::log2(std::max(nn, 2.0)) / denom);
    }
    long long q_eff = std::max<long long>(0, std::min(q_target, g_avail));

    long long branches = 1;
    for (long long i = 2; i <= q_eff; ++i) {
        if (branches > (long long)(4e18) / i) {
            branches = -1;  // effectively unbounded
            break;
        }
        branches *= i;
    }
    auto exceeds = [&](long long cap) {
        if (branches < 0) return true;
        return branches > cap / (long long)members_.size();
    };

    bool expand = !degraded_;
    if (!degraded_) {
        if (cfg_.mode == AdvMode::Exact) {
            if (exceeds(cfg_.exact_cap))
                fail(ErrorCode::ExplosionGuard,
                     "permute would materialize past the exact-mode cap");
        } else if (exceeds(cfg_.branch_cap)) {
            SequenceMember rep = std::move(members_.front());
            Pick pk = std::move(picks.front());
            members_.clear();
            members_.push_back(std::move(rep));
            picks.clear();
            picks.push_back(std::move(pk));
            degraded_ = true;
            expand = false;
        }
    } else {
        expand = false;
    }

    if (expand) {
        std::vector<SequenceMember> next;
        next.reserve(members_.size() * (std::size_t)branches);
        for (std::size_t mi = 0; mi < members_.size(); ++mi) {
            std::vector<int> perm((std::size_t)q_eff);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                SequenceMember branch = members_[mi];
                for (int pi : perm) {
                    NodeId id = picks[mi].ids[(std::size_t)pi];
                    branch.forest.decrease_key(id, 0);
                    branch.ops.push_back({SeqOp::DecreaseKey, 0, (long long)id, 0});
                }
                next.push_back(std::move(branch));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        members_.swap(next);
    } else {
        // Past the cap only the representative evolves; it takes the
        // identity ordering and the ledger carries the lost factor.
        for (std::size_t mi = 0; mi < members_.size(); ++mi) {
            for (long long pi = 0; pi < q_eff; ++pi) {
                NodeId id = picks[mi].ids[(std::size_t)pi];
                members_[mi].forest.decrease_key(id, 0);
                members_[mi].ops.push_back({SeqOp::DecreaseKey, 0, (long long)id, 0});
            }
        }
    }

    double gain = 0;
    for (long long i = 2; i <= q_eff; ++i) gain += std::log2(double(i));
    double location_charge = log2_binomial(cc_rep, g_avail);
    note_evolution("permute", gain - location_charge);
    exact_asserts("permute");
    return q_eff;
}

long long Adversary::vio_dk_pass(std::vector<Position>& order) {
    long long done = 0;
    for (;;) {
        const Forest& rep = members_.front().forest;
        Position best;
        bool found = false;
        for (NodeId id : rep.live_nodes()) {
            if (!rep.node(id).marked) continue;
            Position p = rep.position_of(id);
            if (!found || p < best) {
                best = p;
                found = true;
            }
        }
        if (!found) break;
        for (const SequenceMember& m : members_) {
            NodeId id = find_at(m.forest, best);
            if (id == kNoNode || !m.forest.node(id).marked) {
                subdistinct_clean_ = false;
                break;
            }
        }
        evolve_decrease_key(best);
        order.push_back(best);
        ++done;
        if (done > members_.front().forest.size())
            fail(ErrorCode::ExplosionGuard, "violation decrease-keys did not converge");
    }
    return done;
}

RoundRecord Adversary::run_round() {
    RoundRecord rec;
    double bound_start = bound_d_;
    checkpoint("round-start");
    if (!boundary_clean(members_.front().forest, cfg_.n)) boundaries_clean_ = false;

    BigSmallOutcome bs = evolve_big_small();
    rec.small = bs.small;
    if (bs.p) {
        const Forest& f = members_.front().forest;
        rec.root_count = (long long)f.roots_rtl().size();
        rec.p = bs.p->to_string();
        if (bs.small) rec.child_count = (long long)f.node(f.node_at(*bs.p)).children_rtl.size();
    } else {
        rec.p = "-";
    }

    if (bs.small) {
        evolve_decrease_key(*bs.p, true);
        rec.dc = evolve_permute();
    } else {
        // With many roots no single position is classified; the rightmost
        // root is the one index every member shares.
        evolve_designated_min_root(bs.p ? *bs.p : Position{{0}});
    }

    ExtractMinEvolution em = evolve_extract_min();
    rec.acem = em.acem;
    rec.vs = (long long)em.violations.size();
    for (const Position& v : em.violations) rec.violations.push_back(v.to_string());
    checkpoint("post-extract-min");

    std::vector<Position> order;
    long long ndk = vio_dk_pass(order);
    if (ndk != rec.vs)
        fail(ErrorCode::OrderViolation,
             "violation bookkeeping diverged: " + std::to_string(ndk) + " decrease-keys for " +
                 std::to_string(rec.vs) + " recorded violations");
    checkpoint("post-violation-dks");

    evolve_insert();
    if (!boundary_clean(members_.front().forest, cfg_.n)) boundaries_clean_ = false;
    checkpoint("round-end");

    rec.count_after = count();
    rec.distinctness_delta = bound_d_ - bound_start;
    rounds_.push_back(rec);
    return rec;
}

AdversaryRunReport Adversary::run() {
    for (int r = 0; r < cfg_.k; ++r) run_round();

    AdversaryRunReport rep;
    rep.config = cfg_;
    rep.rounds = rounds_;
    rep.trail = trail_;
    rep.final_count = count();
    rep.degraded = degraded_;
    rep.distinctness = distinctness();
    rep.bound_distinctness = bound_d_;

    const CostAccount& costs = members_.front().forest.costs();
    rep.cost_initial = cfg_.n;
    rep.cost_rounds = costs.total() - cfg_.n;
    rep.eq1_rhs = 0;
    rep.sum_vs = 0;
    for (const RoundRecord& rc : rounds_) {
        rep.eq1_rhs += rc.cost();
        rep.sum_vs += rc.vs;
        if (rc.small) ++rep.small_rounds;
    }
    bool uniform = true;
    for (const SequenceMember& m : members_) {
        if (m.forest.costs().total() != costs.total()) uniform = false;
        if (m.forest.costs().pairings != costs.pairings) uniform = false;
    }
    rep.eq1_exact = uniform && rep.cost_rounds == rep.eq1_rhs;
    rep.pairings = costs.pairings;
    rep.eq2_holds = (long long)cfg_.params.w() * rep.sum_vs <= rep.pairings;

    rep.fraction_small = cfg_.k > 0 ? double(rep.small_rounds) / double(cfg_.k) : 0.0;
    rep.fracsmall_holds = 2 * rep.small_rounds >= cfg_.k;

    rep.boundaries_clean = boundaries_clean_;
    rep.subdistinct_clean = subdistinct_clean_;
    rep.victims_clean = victims_clean_;
    rep.maxdistinct_ok = maxdistinct_ok_;
    rep.permutable_short = permutable_short_;
    rep.child_outranked_parent = members_.front().forest.child_outranked_parent_count();

    if (cfg_.check_monotone) {
        MonotoneReport mr = check_monotone_rank(members_.front().ops, program_, cfg_.params);
        rep.monotone_clean = mr.clean();
        rep.monotone_decreases = (long long)mr.decreases.size();
    } else {
        rep.monotone_clean = true;
        rep.monotone_decreases = -1;
    }
    return rep;
}

AdversaryRunReport run_adversary(const AdversaryConfig& cfg) {
    Adversary a(cfg);
    return a.run();
}

}  // namespace pureheap
