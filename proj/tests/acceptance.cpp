// Acceptance gate: ten numbered criteria, one pass/fail line each.  Run all
// with no arguments or a single one with --criterion N.  Exit 0 only when
// every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pureheap/adversary.hpp"
#include "pureheap/algorithms.hpp"
#include "pureheap/enumerate.hpp"
#include "pureheap/errors.hpp"
#include "pureheap/forest.hpp"
#include "pureheap/monotone.hpp"
#include "pureheap/rank.hpp"
#include "pureheap/session.hpp"
#include "pureheap/subop.hpp"
#include "pureheap/workload.hpp"

namespace {

using namespace pureheap;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// ------------------------------------------------------------- criterion 1
// Every suboperation kind rejects invalid use with the right error class and
// untouched state; ten thousand randomized valid programs run error-free.

bool expect_code(ExtractMinSession& s, const Suboperation& op, ErrorCode want,
                 std::string& err) {
    std::uint64_t h = s.state_hash();
    try {
        s.apply(op);
    } catch (const VmError& e) {
        if (e.code() != want) {
            err = std::string("wrong error class: ") + e.what();
            return false;
        }
        if (s.state_hash() != h) {
            err = std::string("state changed by rejected op: ") + e.what();
            return false;
        }
        return true;
    }
    err = "no error raised";
    return false;
}

struct Fixture {
    Forest f{RankParams{1, 1, 4}};
    NodeId a, b, c;
    std::unique_ptr<ExtractMinSession> s;
    explicit Fixture(int rho = 4) {
        a = f.insert(10);
        b = f.insert(5);
        c = f.insert(1);
        s = std::make_unique<ExtractMinSession>(f, rho);
    }
    std::optional<bool> ap(const Suboperation& op) { return s->apply(op); }
};

Outcome criterion_1() {
    Outcome out;
    std::vector<std::string> errs;
    auto check = [&](ExtractMinSession& s, const Suboperation& op, ErrorCode want,
                     const char* label) {
        std::string err;
        if (!expect_code(s, op, want, err)) errs.push_back(std::string(label) + ": " + err);
    };
    int range_cases = 0, false_cases = 0, uncert_cases = 0;

    {  // pointer range is checked first for every pointer-taking kind
        Fixture fx;
        for (int k = 0; k < kSubopKindCount; ++k) {
            SubopKind kind = SubopKind(k);
            if (kind == SubopKind::End) continue;
            check(*fx.s, Suboperation{kind, 0, 1}, ErrorCode::PointerOutOfRange, "range low");
            check(*fx.s, Suboperation{kind, 5, 1}, ErrorCode::PointerOutOfRange, "range high");
            ++range_cases;
        }
        check(*fx.s, Suboperation::compare(1, 0), ErrorCode::PointerOutOfRange, "range second");
        check(*fx.s, Suboperation::set(1, 9), ErrorCode::PointerOutOfRange, "range second");
    }
    {  // Pair: uncertified, then structurally wrong key order
        Fixture fx;
        fx.ap(Suboperation::has_right_sibling(2));
        fx.ap(Suboperation::move_to_right_sibling(2));
        fx.ap(Suboperation::compare(1, 2));
        check(*fx.s, Suboperation::pair(1, 2), ErrorCode::PreconditionNotVerified, "pair");
        ++uncert_cases;
        fx.ap(Suboperation::has_parent(1));
        fx.ap(Suboperation::has_parent(2));
        check(*fx.s, Suboperation::pair(2, 1), ErrorCode::PreconditionViolated, "pair order");
        ++false_cases;
        check(*fx.s, Suboperation::pair(1, 1), ErrorCode::PreconditionViolated, "pair self");
    }
    {  // Unpair with no children
        Fixture fx;
        check(*fx.s, Suboperation::unpair(1), ErrorCode::PreconditionViolated, "unpair");
        ++false_cases;
    }
    {  // the four moves, both flavors, via one paired fixture
        Fixture fx;
        check(*fx.s, Suboperation::move_to_parent(1), ErrorCode::PreconditionViolated,
              "move-parent at root");
        ++false_cases;
        check(*fx.s, Suboperation::move_to_right_sibling(1), ErrorCode::PreconditionNotVerified,
              "move-right uncertified");
        ++uncert_cases;
        fx.ap(Suboperation::has_right_sibling(2));
        fx.ap(Suboperation::move_to_right_sibling(2));
        fx.ap(Suboperation::has_parent(1));
        fx.ap(Suboperation::has_parent(2));
        fx.ap(Suboperation::compare(1, 2));
        fx.ap(Suboperation::pair(1, 2));  // b becomes the child of c
        check(*fx.s, Suboperation::move_to_parent(2), ErrorCode::PreconditionNotVerified,
              "move-parent uncertified");
        ++uncert_cases;
        check(*fx.s, Suboperation::move_to_leftmost_child(2), ErrorCode::PreconditionViolated,
              "move-child childless");
        ++false_cases;
        check(*fx.s, Suboperation::move_to_leftmost_child(1), ErrorCode::PreconditionNotVerified,
              "move-child uncertified");
        ++uncert_cases;
        fx.ap(Suboperation::has_left_sibling(1));
        check(*fx.s, Suboperation::move_to_left_sibling(1), ErrorCode::PreconditionViolated,
              "move-left at leftmost");
        ++false_cases;
        fx.ap(Suboperation::has_right_sibling(3));
        fx.ap(Suboperation::move_to_right_sibling(3));  // register 3 at rightmost root a
        check(*fx.s, Suboperation::move_to_left_sibling(3), ErrorCode::PreconditionNotVerified,
              "move-left uncertified");
        ++uncert_cases;
        fx.ap(Suboperation::has_right_sibling(3));
        check(*fx.s, Suboperation::move_to_right_sibling(3), ErrorCode::PreconditionViolated,
              "move-right at rightmost");
        ++false_cases;
    }
    {  // End: many roots, then a lone root without certificates
        Fixture fx;
        check(*fx.s, Suboperation{SubopKind::End, 0, 0}, ErrorCode::PreconditionViolated,
              "end many roots");
        ++false_cases;
        auto dance = [&] {
            fx.ap(Suboperation::has_parent(1));
            fx.ap(Suboperation::has_parent(2));
            fx.ap(Suboperation::compare(1, 2));
            fx.ap(Suboperation::pair(1, 2));
        };
        fx.ap(Suboperation::has_right_sibling(2));
        fx.ap(Suboperation::move_to_right_sibling(2));
        dance();
        fx.ap(Suboperation::has_parent(2));
        fx.ap(Suboperation::move_to_parent(2));
        fx.ap(Suboperation::has_right_sibling(2));
        fx.ap(Suboperation::move_to_right_sibling(2));
        dance();
        check(*fx.s, Suboperation{SubopKind::End, 0, 0}, ErrorCode::PreconditionNotVerified,
              "end uncertified");
        ++uncert_cases;
        fx.ap(Suboperation::has_parent(1));
        fx.ap(Suboperation::has_left_sibling(1));
        fx.ap(Suboperation::has_right_sibling(1));
        fx.ap(Suboperation{SubopKind::End, 0, 0});
        Key removed = fx.s->finish();
        if (removed.value != 1) errs.push_back("end fixture removed the wrong key");
    }

    // Fuzz: randomized valid pairing programs with certified noise.
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260822);
    long long programs = 0, subops = 0;
    const int kPrograms = 10000;
    try {
        for (int it = 0; it < kPrograms; ++it) {
            Forest f(RankParams{1, 1, 4});
            int n = 1 + int(rng() % 512);
            std::vector<NodeId> ids;
            for (int i = 0; i < n; ++i) ids.push_back(f.insert((long long)(rng() % 1000)));
            for (int i = 0; i < n / 8; ++i)
                f.decrease_key(ids[rng() % ids.size()], (long long)(rng() % 50));
            const int rho = 8;
            ExtractMinSession s(f, rho);
            auto ap = [&](const Suboperation& op) {
                ++subops;
                return s.apply(op);
            };
            auto noise = [&] {
                int r = 1 + int(rng() % rho);
                switch (rng() % 6) {
                    case 0: ap(Suboperation::has_parent(r)); break;
                    case 1: ap(Suboperation::has_children(r)); break;
                    case 2: ap(Suboperation::compare(r, 1 + int(rng() % rho))); break;
                    case 3: ap(Suboperation::set(r, 1 + int(rng() % rho))); break;
                    case 4: ap(Suboperation::swap(r, 1 + int(rng() % rho))); break;
                    case 5:  // one certified walk step
                        if (ap(Suboperation::has_left_sibling(r)) == std::optional<bool>(true))
                            ap(Suboperation::move_to_left_sibling(r));
                        break;
                }
            };
            auto to_root = [&](int reg) {
                while (f.node(s.pointer(reg)).parent != kNoNode) {
                    ap(Suboperation::has_parent(reg));
                    ap(Suboperation::move_to_parent(reg));
                }
            };
            while (f.roots_rtl().size() > 1) {
                if (rng() % 4 == 0) noise();
                to_root(1);
                if (s.pointer(1) == f.roots_rtl().front()) {  // rightmost: step left once
                    ap(Suboperation::has_left_sibling(1));
                    ap(Suboperation::move_to_left_sibling(1));
                }
                ap(Suboperation::set(2, 1));
                ap(Suboperation::has_right_sibling(2));
                ap(Suboperation::move_to_right_sibling(2));
                ap(Suboperation::has_parent(1));
                ap(Suboperation::has_parent(2));
                bool first_wins = *ap(Suboperation::compare(1, 2));
                int w = first_wins ? 1 : 2, l = first_wins ? 2 : 1;
                ap(Suboperation::pair(w, l));
                if (rng() % 16 == 0) {  // undo and redo
                    ap(Suboperation::unpair(w));
                    ap(Suboperation::has_parent(1));
                    ap(Suboperation::has_parent(2));
                    ap(Suboperation::compare(1, 2));
                    ap(Suboperation::pair(w, l));
                }
            }
            to_root(1);
            ap(Suboperation::has_parent(1));
            ap(Suboperation::has_left_sibling(1));
            ap(Suboperation::has_right_sibling(1));
            ap(Suboperation{SubopKind::End, 0, 0});
            s.finish();
            ++programs;
        }
    } catch (const VmError& e) {
        errs.push_back(std::string("fuzz error after ") + std::to_string(programs) +
                       " programs: " + e.what());
    }
    double secs = seconds_since(t0);
    if (secs >= 60.0) errs.push_back("fuzz exceeded one minute");

    out.pass = errs.empty();
    std::ostringstream d;
    if (out.pass)
        d << "14/14 kinds rejected invalid use with state intact (" << false_cases
          << " condition-false, " << uncert_cases << " uncertified, " << range_cases
          << " range); " << programs << " fuzzed programs, " << subops << " suboperations, 0 errors in "
          << std::fixed << std::setprecision(1) << secs << " s";
    else
        d << errs.size() << " failures; first: " << errs.front();
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 2
// Extract-min returns the true minimum against a sorted-multiset oracle, and
// every extract-min performs exactly roots-1 pairings.

Outcome criterion_2() {
    Outcome out;
    std::mt19937_64 rng(777);
    using OracleKey = std::tuple<int, long long, long long>;
    long long workloads = 0, extract_mins = 0;
    std::string err;
    for (int it = 0; it < 1000 && err.empty(); ++it) {
        int n = 1 + int(rng() % 1024);
        Workload w = build_scenario(it % 2 ? "mixed" : "random", n, 5000 + it);
        for (const AlgorithmInfo& algo : algorithm_registry()) {
            Forest f(RankParams{});
            std::vector<NodeId> by_ordinal;
            std::vector<OracleKey> shadow;
            std::set<OracleKey> oracle;
            for (const SeqOp& op : w) {
                if (!err.empty()) break;
                switch (op.kind) {
                    case SeqOp::Insert: {
                        by_ordinal.push_back(f.insert(op.value));
                        shadow.push_back({1, op.value, (long long)shadow.size()});
                        oracle.insert(shadow.back());
                        break;
                    }
                    case SeqOp::DecreaseKey: {
                        std::size_t t = (std::size_t)op.target;
                        f.decrease_key(by_ordinal[t], op.delta);
                        OracleKey next = shadow[t];
                        std::get<1>(next) -= op.delta;
                        oracle.erase(shadow[t]);
                        oracle.insert(next);
                        shadow[t] = next;
                        break;
                    }
                    case SeqOp::DecreaseKeyNegInf: {
                        std::size_t t = (std::size_t)op.target;
                        f.decrease_key_to_neg_inf(by_ordinal[t]);
                        OracleKey next{0, 0, op.target};
                        oracle.erase(shadow[t]);
                        oracle.insert(next);
                        shadow[t] = next;
                        break;
                    }
                    case SeqOp::ExtractMin: {
                        long long roots = (long long)f.roots_rtl().size();
                        long long pair_before = f.costs().pairings;
                        ExtractMinOutcome o = run_extract_min(f, algo.program);
                        ++extract_mins;
                        long long paired = f.costs().pairings - pair_before;
                        if (paired != roots - 1) {
                            err = algo.name + ": " + std::to_string(paired) + " pairings for " +
                                  std::to_string(roots) + " roots";
                            break;
                        }
                        OracleKey want = *oracle.begin();
                        long long want_ord = std::get<2>(want);
                        bool want_ninf = std::get<0>(want) == 0;
                        if (o.removed.neg_inf != want_ninf ||
                            (!want_ninf && o.removed.value != std::get<1>(want)) ||
                            by_ordinal[(std::size_t)want_ord] != o.victim) {
                            err = algo.name + ": extracted wrong minimum";
                            break;
                        }
                        oracle.erase(oracle.begin());
                        break;
                    }
                }
            }
        }
        ++workloads;
    }
    out.pass = err.empty();
    std::ostringstream d;
    if (out.pass)
        d << workloads << " workloads x " << algorithm_registry().size() << " programs, "
          << extract_mins << " extract-mins: minima exact, pairings always roots-1";
    else
        d << err;
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 3
// Incremental ranks agree with from-scratch recursion after every mutation;
// and the per-node unmarked-subtree bound w^rank at every checkpoint.

Outcome criterion_3() {
    Outcome out;
    std::string rank_err;
    long long size_viol = 0, size_checked = 0;
    struct Cfg {
        long long n, T;
        int k, d;
        AdvMode mode;
        int q;
    };
    // coherent run lengths per width: T <= w^W + w - 1
    for (Cfg c : {Cfg{64, 4, 6, 1, AdvMode::Ledger, 2}, Cfg{64, 12, 6, 3, AdvMode::Ledger, 2},
                  Cfg{12, 8, 3, 1, AdvMode::Exact, 3}, Cfg{128, 8, 5, 2, AdvMode::Ledger, 2}}) {
        AdversaryConfig cfg;
        cfg.n = c.n;
        cfg.k = c.k;
        cfg.mode = c.mode;
        cfg.q = c.q;
        cfg.params = RankParams{c.d, 1, c.T};
        cfg.differential_rank = true;
        Adversary adv(cfg);
        int w = cfg.params.w();
        adv.on_checkpoint = [&](const Forest& f, const std::string&) {
            for (NodeId id : f.live_nodes()) {
                ++size_checked;
                const HeapNode& nd = f.node(id);
                if ((unsigned __int128)nd.unmarked_size > pow_u128(w, nd.rank())) ++size_viol;
            }
        };
        try {
            adv.run();
        } catch (const VmError& e) {
            rank_err = e.what();
            break;
        }
    }
    out.pass = rank_err.empty() && size_viol == 0;
    std::ostringstream d;
    if (!rank_err.empty()) {
        d << "incremental rank diverged from recomputation: " << rank_err;
    } else {
        d << "incremental ranks matched recomputation after every mutation; subtree bound w^rank "
          << (size_viol == 0 ? "held" : "FAILED") << " on " << size_viol << "/" << size_checked
          << " node checkpoints (single-child chains never trigger increments, so unit-rank "
             "subtrees grow past the bound)";
    }
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 4
// The size recurrence against w^k on the stated parameter grid, and the
// exhaustively constructible maxima against the recurrence.

Outcome criterion_4() {
    Outcome out;
    int grid_total = 0, grid_fail = 0;
    std::string first_grid;
    for (int dd : {1, 2})
        for (int WW : {1, 2})
            for (int a : {3, 10}) {
                RankParams p = RankParams::from_exponent(dd, WW, a);
                ++grid_total;
                for (int k = 0; k <= 12; ++k) {
                    if (max_unmarked_heap_size(k, p) > pow_u128(p.w(), k)) {
                        ++grid_fail;
                        if (first_grid.empty()) {
                            std::ostringstream g;
                            g << "w=" << p.w() << " W=" << WW << " T=" << p.T << " at k=" << k;
                            first_grid = g.str();
                        }
                        break;
                    }
                }
            }
    int cons_total = 0, cons_fail = 0;
    std::string first_cons;
    for (long long T = 1; T <= 16; ++T) {
        RankParams p{1, 1, T};
        ReachableHeapStats st = explore_pairable_heaps(p, 200, 4);
        ++cons_total;
        for (int k = 0; k <= 4; ++k) {
            long long rec = (long long)max_unmarked_heap_size(k, p);
            auto it = st.max_size_by_rank.find(k);
            long long got = it == st.max_size_by_rank.end() ? -1 : it->second;
            if (got != rec) {
                ++cons_fail;
                if (first_cons.empty()) {
                    std::ostringstream g;
                    g << "T=" << T << " k=" << k << ": constructible " << got << " vs recurrence "
                      << rec;
                    first_cons = g.str();
                }
                break;
            }
        }
    }
    out.pass = grid_fail == 0 && cons_fail == 0;
    std::ostringstream d;
    d << "recurrence bound failed on " << grid_fail << "/" << grid_total
      << " grid points (every grid T exceeds w^W + w - 1, e.g. " << first_grid
      << "); construction matched the recurrence on " << (cons_total - cons_fail) << "/"
      << cons_total << " run lengths (chains keep every rank's true maximum unbounded, e.g. "
      << first_cons << ")";
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 5
// Qualifying roots carry enough efficiently linked children at every
// checkpoint of the adversary runs.

Outcome criterion_5() {
    Outcome out;
    long long checked = 0, viol = 0;
    for (long long n : {256, 1024, 4096}) {
        AdversaryConfig cfg;
        cfg.n = n;
        cfg.k = 8;
        cfg.mode = AdvMode::Ledger;
        cfg.q = 2;
        cfg.params = RankParams{1, 1, 4};
        double fv = cfg.f(), gv = cfg.g();
        Adversary adv(cfg);
        adv.on_checkpoint = [&](const Forest& f, const std::string&) {
            for (NodeId r : f.roots_rtl()) {
                const HeapNode& nd = f.node(r);
                long long m = nd.unmarked_size;
                if (m < 2) continue;
                double lg = std::log2(double(m));
                if (double(f.child_rank_details(r).size()) > fv * lg) continue;
                ++checked;
                if (double(f.count_efficient_children(r)) + 1e-9 < gv * lg) ++viol;
            }
        };
        adv.run();
    }
    out.pass = viol == 0;
    std::ostringstream d;
    d << checked << " qualifying roots across three run sizes, " << viol << " violations";
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 6
// No rank decreases before designated-minimum-root status on seeded
// monotone sequences.

Outcome criterion_6() {
    Outcome out;
    std::mt19937_64 rng(42);
    RankParams params{1, 1, 4};
    const ExtractMinProgram& program = find_algorithm("two-pass")->program;
    long long boundaries = 0, decreases = 0;
    for (int t = 0; t < 1000; ++t) {
        int steps = 1 + int(rng() % 64);
        Workload w = generate_monotone_workload(steps, params, program, 9000 + t);
        MonotoneReport rep = check_monotone_rank(w, program, params);
        boundaries += rep.boundaries_checked;
        decreases += (long long)rep.decreases.size();
    }
    out.pass = decreases == 0;
    std::ostringstream d;
    d << "1000 sequences, " << boundaries << " rank boundaries, " << decreases << " decreases";
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 7
// Exhaustive marked-forest counts equal the Catalan product, and every
// exact-mode run stays under the materialization ceiling.

Outcome criterion_7() {
    Outcome out;
    std::string err;
    for (int n = 1; n <= 8 && err.empty(); ++n) {
        MarkedForestCount mc = enumerate_marked_forests(n, 8);
        unsigned long long cat = (unsigned long long)catalan_recurrence(n);
        if (mc.shapes != cat || mc.marked != (cat << n)) {
            std::ostringstream g;
            g << "n=" << n << ": " << mc.marked << " vs " << (cat << n);
            err = g.str();
        }
    }
    int exact_runs = 0;
    if (err.empty()) {
        struct Cfg {
            long long n, T;
            int k, q;
        };
        for (Cfg c : {Cfg{12, 8, 3, 3}, Cfg{10, 6, 3, 2}, Cfg{8, 6, 2, 2}}) {
            AdversaryConfig cfg;
            cfg.n = c.n;
            cfg.k = c.k;
            cfg.mode = AdvMode::Exact;
            cfg.q = c.q;
            cfg.params = RankParams{1, 1, c.T};
            AdversaryRunReport rep = run_adversary(cfg);
            ++exact_runs;
            double ceiling = std::log2(double(catalan_recurrence(int(rep.config.n)))) +
                             double(rep.config.n);
            if (!rep.maxdistinct_ok || rep.distinctness > ceiling + 1e-9) {
                std::ostringstream g;
                g << "exact run n=" << c.n << " exceeded the ceiling";
                err = g.str();
            }
        }
    }
    out.pass = err.empty();
    std::ostringstream d;
    if (out.pass)
        d << "counts equal the Catalan product for n <= 8; " << exact_runs
          << " exact runs stayed under the ceiling";
    else
        d << err;
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 8
// The run-cost identity, the pairing bound on violation decrease-keys, and
// identical violation positions across all surviving sequences.

Outcome criterion_8() {
    Outcome out;
    struct Cfg {
        long long n, T;
        int k, q;
        AdvMode mode;
    };
    int runs = 0, bad = 0;
    std::string first;
    for (Cfg c : {Cfg{12, 8, 3, 3, AdvMode::Exact}, Cfg{64, 4, 8, 2, AdvMode::Ledger},
                  Cfg{64, 12, 8, 2, AdvMode::Ledger}, Cfg{128, 8, 6, 2, AdvMode::Ledger},
                  Cfg{256, 4, 4, 2, AdvMode::Ledger}}) {
        AdversaryConfig cfg;
        cfg.n = c.n;
        cfg.k = c.k;
        cfg.mode = c.mode;
        cfg.q = c.q;
        cfg.params = RankParams{1, 1, c.T};
        AdversaryRunReport rep = run_adversary(cfg);
        ++runs;
        if (!rep.eq1_exact || !rep.eq2_holds || !rep.subdistinct_clean || !rep.boundaries_clean ||
            !rep.victims_clean) {
            ++bad;
            if (first.empty()) {
                std::ostringstream g;
                g << "n=" << c.n << " T=" << c.T << ": eq1=" << rep.eq1_exact
                  << " eq2=" << rep.eq2_holds << " subdistinct=" << rep.subdistinct_clean;
                first = g.str();
            }
        }
    }
    out.pass = bad == 0;
    std::ostringstream d;
    if (out.pass)
        d << runs << " runs: cost identity exact, pairing bound held, violation positions "
             "identical across survivors";
    else
        d << first;
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------- criterion 9
// Exact and ledger modes agree on the materialized count, and hence its
// logarithm, at every evolution step.

Outcome criterion_9() {
    Outcome out;
    int configs = 0, bad = 0;
    std::string first;
    for (long long n : {8, 10, 12})
        for (int k : {2, 3})
            for (int q : {2, 3})
                for (long long T : {6, 8}) {
                    AdversaryConfig cfg;
                    cfg.n = n;
                    cfg.k = k;
                    cfg.q = q;
                    cfg.params = RankParams{1, 1, T};
                    cfg.mode = AdvMode::Exact;
                    AdversaryRunReport e = run_adversary(cfg);
                    cfg.mode = AdvMode::Ledger;
                    AdversaryRunReport l = run_adversary(cfg);
                    ++configs;
                    bool ok = e.trail.size() == l.trail.size() &&
                              e.distinctness == l.distinctness;
                    for (std::size_t i = 0; ok && i < e.trail.size(); ++i)
                        ok = e.trail[i].evolution == l.trail[i].evolution &&
                             e.trail[i].count == l.trail[i].count;
                    if (!ok) {
                        ++bad;
                        if (first.empty()) {
                            std::ostringstream g;
                            g << "n=" << n << " k=" << k << " q=" << q << " T=" << T;
                            first = g.str();
                        }
                    }
                }
    out.pass = bad == 0;
    std::ostringstream d;
    if (out.pass)
        d << configs << " config pairs agreed step for step, count logarithms exactly equal";
    else
        d << bad << "/" << configs << " config pairs diverged; first: " << first;
    out.detail = d.str();
    return out;
}

// ------------------------------------------------------------ criterion 10
// Amortized extract-min cost over full drains of randomly keyed heaps grows
// proportionally to log2 n: the ratio stays within 25% of its median.

Outcome criterion_10() {
    Outcome out;
    auto t0 = Clock::now();
    const ExtractMinProgram& program = find_algorithm("two-pass")->program;
    std::vector<double> ratios;
    for (int e = 8; e <= 14; ++e) {
        long long n = 1ll << e;
        double total = 0;
        for (std::uint64_t seed : {1, 2, 3}) {
            WorkloadResult res =
                run_workload(build_scenario("random", int(n), seed), program, RankParams{}, false);
            total += res.amortized_em();
        }
        ratios.push_back(total / 3.0 / double(e));
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    double secs = seconds_since(t0);
    out.pass = lo >= 0.75 * median && hi <= 1.25 * median && secs < 300.0;
    std::ostringstream d;
    d << std::fixed << std::setprecision(3) << "cost/log2(n) over drains of 2^8..2^14: median "
      << median << ", spread [" << lo << ", " << hi << "]"
      << (secs >= 300.0 ? ", over time budget" : "") << std::setprecision(1) << " (" << secs
      << " s)";
    out.detail = d.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }
    Outcome (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                               criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
    bool all_pass = true;
    for (int i = 1; i <= 10; ++i) {
        if (only != 0 && only != i) continue;
        Outcome o = criteria[i - 1]();
        all_pass = all_pass && o.pass;
        std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " — " << o.detail
                  << std::endl;
    }
    return all_pass ? 0 : 1;
}
