// Command-line front end: adversary runs, lemma verification, workload
// benchmarks, trace record/replay, and exhaustive enumeration.  Exit codes:
// 0 success, 1 verification failure, 2 usage or config error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"

#include "pureheap/adversary.hpp"
#include "pureheap/algorithms.hpp"
#include "pureheap/enumerate.hpp"
#include "pureheap/errors.hpp"
#include "pureheap/forest.hpp"
#include "pureheap/monotone.hpp"
#include "pureheap/rank.hpp"
#include "pureheap/report.hpp"
#include "pureheap/session.hpp"
#include "pureheap/subop.hpp"
#include "pureheap/workload.hpp"

namespace {

using namespace pureheap;

const AlgorithmInfo& algorithm_or_fail(const std::string& name) {
    const AlgorithmInfo* info = find_algorithm(name);
    if (!info) fail(ErrorCode::ParseError, "unknown algorithm: " + name);
    return *info;
}

void write_out(const Report& rep, const std::string& out_path) {
    if (out_path.empty()) {
        rep.write(std::cout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorCode::ParseError, "cannot open for writing: " + out_path);
    rep.write(out);
}

// ---------------------------------------------------------------- adversary

struct AdversaryArgs {
    std::string config_path, out_path, mode = "ledger", algorithm = "two-pass";
    long long n = 64, T = 4, exact_cap = 4096, branch_cap = 4096;
    int k = 4, d = 1, W = 1, a = -1, rho = kDefaultRho, q = 0, m = 1;
    bool no_monotone = false, differential = false;
    // option handles, to tell "explicitly set" from "default"
    std::unordered_map<std::string, CLI::Option*> opt;
    bool set(const std::string& name) const {
        auto it = opt.find(name);
        return it != opt.end() && it->second->count() > 0;
    }
};

AdvMode parse_mode(const std::string& s) {
    if (s == "exact") return AdvMode::Exact;
    if (s == "ledger") return AdvMode::Ledger;
    fail(ErrorCode::ParseError, "mode must be exact or ledger: " + s);
}

int cmd_adversary(const AdversaryArgs& a) {
    AdversaryConfig cfg;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) fail(ErrorCode::ParseError, "cannot read config: " + a.config_path);
        cfg = AdversaryConfig::from_report(Report::read(in));
    }
    if (a.set("n")) cfg.n = a.n;
    if (a.set("k")) cfg.k = a.k;
    if (a.set("mode")) cfg.mode = parse_mode(a.mode);
    if (a.set("algorithm")) cfg.algorithm = a.algorithm;
    if (a.set("d")) cfg.params.d = a.d;
    if (a.set("W")) cfg.params.W = a.W;
    if (a.set("T")) cfg.params.T = a.T;
    if (a.set("a")) cfg.params = RankParams::from_exponent(cfg.params.d, cfg.params.W, a.a);
    if (a.set("rho")) cfg.rho = a.rho;
    if (a.set("q")) cfg.q = a.q;
    if (a.set("m")) cfg.m = a.m;
    if (a.set("exact-cap")) cfg.exact_cap = a.exact_cap;
    if (a.set("branch-cap")) cfg.branch_cap = a.branch_cap;
    if (a.no_monotone) cfg.check_monotone = false;
    if (a.differential) cfg.differential_rank = true;
    cfg.validate();

    AdversaryRunReport run = run_adversary(cfg);
    write_out(run.to_report(), a.out_path);
    return 0;
}

// ------------------------------------------------------------ verify-lemmas

struct SuiteLine {
    std::string name, detail;
    bool ok = true;
};

void print_suites(const std::vector<SuiteLine>& suites) {
    for (const SuiteLine& s : suites)
        std::cout << s.name << ": " << (s.ok ? "ok" : "FAIL") << " (" << s.detail << ")\n";
}

struct EffcountScan {
    long long roots_checked = 0;
    long long violations = 0;
};

// Every root whose unmarked child count stays within f*log2(m) must carry at
// least g*log2(m) efficiently linked children, m = unmarked subtree size.
void scan_effcount(const Forest& f, double fv, double gv, EffcountScan& acc) {
    for (NodeId r : f.roots_rtl()) {
        const HeapNode& nd = f.node(r);
        long long m = nd.unmarked_size;
        if (m < 2) continue;
        double lg = std::log2(double(m));
        long long cc = (long long)f.child_rank_details(r).size();
        if (double(cc) > fv * lg) continue;
        ++acc.roots_checked;
        if (double(f.count_efficient_children(r)) + 1e-9 < gv * lg) ++acc.violations;
    }
}

int cmd_verify_lemmas(long long n, long long trials, std::uint64_t seed,
                      const std::string& algorithm, RankParams params, int enum_n) {
    const AlgorithmInfo& algo = algorithm_or_fail(algorithm);
    params.validate();
    std::vector<SuiteLine> suites;

    // Adversary battery shared by the efficiency, identity, and distinctness
    // suites: two ledger runs at the requested size, one exact run small
    // enough to materialize every member.
    std::vector<AdversaryConfig> battery;
    {
        AdversaryConfig a;
        a.n = n; a.k = 8; a.mode = AdvMode::Ledger; a.algorithm = algorithm;
        a.params = params; a.q = 2;
        battery.push_back(a);
        AdversaryConfig b = a;
        b.params.T = std::max<long long>(params.T, 12);
        battery.push_back(b);
        AdversaryConfig c;
        c.n = 12; c.k = 3; c.mode = AdvMode::Exact; c.algorithm = algorithm;
        c.params = RankParams{params.d, params.W, 8}; c.q = 3;
        battery.push_back(c);
    }
    // The efficiency lemma's proof runs through the closed-form subtree
    // bound, whose induction needs T <= w^W + w - 1; outside that regime the
    // conclusion genuinely fails on small roots, so only coherent runs feed
    // the scan.
    auto coherent = [](const RankParams& p) {
        return (unsigned __int128)p.T <= pow_u128(p.w(), p.W) + p.w() - 1;
    };
    if (std::none_of(battery.begin(), battery.end(),
                     [&](const AdversaryConfig& c) { return coherent(c.params); })) {
        AdversaryConfig d = battery.front();
        d.params.T = (long long)(unsigned long long)(pow_u128(d.params.w(), d.params.W) +
                                                    d.params.w() - 1);
        battery.push_back(d);
    }
    EffcountScan eff;
    std::vector<AdversaryRunReport> runs;
    for (const AdversaryConfig& cfg : battery) {
        Adversary adv(cfg);
        if (coherent(cfg.params)) {
            double fv = cfg.f(), gv = cfg.g();
            adv.on_checkpoint = [&](const Forest& f, const std::string&) {
                scan_effcount(f, fv, gv, eff);
            };
        }
        runs.push_back(adv.run());
    }

    {  // rank never decreases before designated-minimum-root status
        SuiteLine s{"monotone-rank", ""};
        long long boundaries = 0, decreases = 0;
        for (long long t = 0; t < trials; ++t) {
            Workload w = generate_monotone_workload(int(n), params, algo.program, seed + t);
            MonotoneReport rep = check_monotone_rank(w, algo.program, params);
            boundaries += rep.boundaries_checked;
            decreases += (long long)rep.decreases.size();
        }
        for (const AdversaryRunReport& r : runs)
            if (!r.monotone_clean) ++decreases;
        s.ok = decreases == 0;
        std::ostringstream d;
        d << trials << " sequences, " << boundaries << " boundaries, " << decreases
          << " decreases";
        s.detail = d.str();
        suites.push_back(s);
    }
    {  // recurrence value stays under w^k
        SuiteLine s{"size-recurrence", ""};
        int w = params.w();
        int bad_k = -1;
        for (int k = 0; k <= 12; ++k) {
            if (max_unmarked_heap_size(k, params) > pow_u128(w, k)) { bad_k = k; break; }
        }
        s.ok = bad_k < 0;
        std::ostringstream d;
        if (s.ok) d << "s_k <= w^k through k=12 at w=" << w << " T=" << params.T;
        else d << "s_" << bad_k << " = " << u128_to_string(max_unmarked_heap_size(bad_k, params))
               << " > " << u128_to_string(pow_u128(w, bad_k)) << " at w=" << w
               << " T=" << params.T;
        s.detail = d.str();
        suites.push_back(s);
    }
    {  // exhaustive marked-forest count against the Catalan recurrence
        SuiteLine s{"marked-enumeration", ""};
        long long checked = 0, mismatches = 0;
        for (int i = 1; i <= enum_n; ++i) {
            MarkedForestCount mc = enumerate_marked_forests(i, enum_n);
            unsigned long long cat = (unsigned long long)catalan_recurrence(i);
            ++checked;
            if (mc.shapes != cat || mc.marked != cat << i) ++mismatches;
        }
        for (const AdversaryRunReport& r : runs)
            if (!r.maxdistinct_ok) ++mismatches;
        s.ok = mismatches == 0;
        std::ostringstream d;
        d << "n <= " << enum_n << ", " << checked << " sizes, " << mismatches
          << " mismatches, run bounds " << (s.ok ? "respected" : "broken");
        s.detail = d.str();
        suites.push_back(s);
    }
    {  // efficiently linked children on every checkpointed root
        SuiteLine s{"efficient-children", ""};
        s.ok = eff.violations == 0;
        std::ostringstream d;
        d << eff.roots_checked << " qualifying roots over coherent-run checkpoints, "
          << eff.violations << " violations";
        s.detail = d.str();
        suites.push_back(s);
    }
    {  // run cost identity and the pairing bound on violation decrease-keys
        SuiteLine s{"cost-identities", ""};
        long long bad = 0;
        for (const AdversaryRunReport& r : runs)
            if (!r.eq1_exact || !r.eq2_holds) ++bad;
        s.ok = bad == 0;
        std::ostringstream d;
        d << runs.size() << " runs, " << bad << " identity failures";
        s.detail = d.str();
        suites.push_back(s);
    }
    {  // violation positions identical across surviving sequences
        SuiteLine s{"sequence-distinctness", ""};
        long long bad = 0;
        for (const AdversaryRunReport& r : runs)
            if (!r.subdistinct_clean || !r.boundaries_clean || !r.victims_clean) ++bad;
        s.ok = bad == 0;
        std::ostringstream d;
        d << runs.size() << " runs, " << bad << " divergent";
        s.detail = d.str();
        suites.push_back(s);
    }

    print_suites(suites);
    for (const SuiteLine& s : suites)
        if (!s.ok) return 1;
    return 0;
}

// ----------------------------------------------------------------- bench

int cmd_bench(const std::string& scenario, long long n, std::uint64_t seed,
              const std::string& algorithm, RankParams params, bool check,
              const std::string& out_path) {
    const AlgorithmInfo& algo = algorithm_or_fail(algorithm);
    Workload w = build_scenario(scenario, int(n), seed);
    WorkloadResult res = run_workload(w, algo.program, params, check);
    Report rep;
    rep.add_comment("workload benchmark");
    rep.add("scenario", scenario);
    rep.add("n", n);
    rep.add("seed", (long long)seed);
    rep.add("algorithm", algorithm);
    rep.add("d", (long long)params.d);
    rep.add("W", (long long)params.W);
    rep.add("T", params.T);
    rep.add_blank();
    rep.add("operations", (long long)res.operations);
    rep.add("inserts", res.costs.inserts);
    rep.add("decrease_keys", res.costs.decrease_keys);
    rep.add("extract_mins", res.costs.extract_mins);
    rep.add("extract_min_subops", res.costs.extract_min_subops);
    rep.add("pairings", res.costs.pairings);
    rep.add("total_cost", res.costs.total());
    rep.add("amortized_em", res.amortized_em());
    rep.add("max_em", res.max_em());
    rep.add("amortized_per_log2_n", res.amortized_em() / std::log2(double(std::max<long long>(n, 2))));
    write_out(rep, out_path);
    return 0;
}

// ----------------------------------------------------------------- trace

// A recorded trace is self-contained: rank parameters, register count, the
// full operation sequence, and the terminal structure code all ride in the
// header, so replay needs nothing but the file.
std::vector<std::string> trace_headers(const std::string& algorithm, const RankParams& p,
                                       int rho, const Workload& ops,
                                       const std::string& snapshot) {
    std::vector<std::string> h;
    h.push_back("algorithm = " + algorithm);
    h.push_back("d = " + std::to_string(p.d));
    h.push_back("W = " + std::to_string(p.W));
    h.push_back("T = " + std::to_string(p.T));
    h.push_back("rho = " + std::to_string(rho));
    for (const SeqOp& op : ops) h.push_back("op = " + format_seq_op(op));
    h.push_back("snapshot = " + snapshot);
    return h;
}

// Shared by record and replay: walk the operation sequence against a live
// forest.  Record passes a program and collects traces; replay passes the
// recorded entries and verifies every answer.
struct TraceRun {
    Forest forest;
    Trace entries;          // concatenated sessions, End-delimited
    long long sessions = 0;
    explicit TraceRun(const RankParams& p) : forest(p) {}
};

std::size_t resolve_ordinal(const std::vector<NodeId>& by_ordinal,
                            const std::vector<bool>& dead, long long t) {
    if (t < 0 || t >= (long long)by_ordinal.size())
        fail(ErrorCode::InvalidWorkload, "ordinal out of range: " + std::to_string(t));
    if (dead[(std::size_t)t])
        fail(ErrorCode::InvalidWorkload, "ordinal already removed: " + std::to_string(t));
    return (std::size_t)t;
}

TraceRun record_run(const Workload& ops, const ExtractMinProgram& program,
                    const RankParams& params, int rho) {
    TraceRun run(params);
    std::vector<NodeId> by_ordinal;
    std::vector<bool> dead;
    std::unordered_map<NodeId, std::size_t> ordinal_of;
    for (const SeqOp& op : ops) {
        switch (op.kind) {
            case SeqOp::Insert: {
                NodeId h = run.forest.insert(op.value);
                ordinal_of[h] = by_ordinal.size();
                by_ordinal.push_back(h);
                dead.push_back(false);
                break;
            }
            case SeqOp::DecreaseKey:
                run.forest.decrease_key(by_ordinal[resolve_ordinal(by_ordinal, dead, op.target)],
                                        op.delta);
                break;
            case SeqOp::DecreaseKeyNegInf:
                run.forest.decrease_key_to_neg_inf(
                    by_ordinal[resolve_ordinal(by_ordinal, dead, op.target)]);
                break;
            case SeqOp::ExtractMin: {
                if (run.forest.empty())
                    fail(ErrorCode::InvalidWorkload, "extract-min on empty forest");
                ExtractMinOutcome out = run_extract_min(run.forest, program, rho);
                run.entries.insert(run.entries.end(), out.trace.begin(), out.trace.end());
                ++run.sessions;
                dead[ordinal_of.at(out.victim)] = true;
                break;
            }
        }
    }
    return run;
}

TraceRun replay_run(const Workload& ops, const Trace& entries, const RankParams& params,
                    int rho) {
    TraceRun run(params);
    std::vector<NodeId> by_ordinal;
    std::vector<bool> dead;
    std::unordered_map<NodeId, std::size_t> ordinal_of;
    std::size_t cursor = 0;
    for (const SeqOp& op : ops) {
        switch (op.kind) {
            case SeqOp::Insert: {
                NodeId h = run.forest.insert(op.value);
                ordinal_of[h] = by_ordinal.size();
                by_ordinal.push_back(h);
                dead.push_back(false);
                break;
            }
            case SeqOp::DecreaseKey:
                run.forest.decrease_key(by_ordinal[resolve_ordinal(by_ordinal, dead, op.target)],
                                        op.delta);
                break;
            case SeqOp::DecreaseKeyNegInf:
                run.forest.decrease_key_to_neg_inf(
                    by_ordinal[resolve_ordinal(by_ordinal, dead, op.target)]);
                break;
            case SeqOp::ExtractMin: {
                if (cursor >= entries.size())
                    fail(ErrorCode::ReplayDivergence, "trace exhausted before extract-min");
                ExtractMinSession s(run.forest, rho);
                bool ended = false;
                while (cursor < entries.size()) {
                    const TraceEntry& e = entries[cursor];
                    std::optional<bool> got = s.apply(e.op);
                    if (got != e.ret)
                        fail(ErrorCode::ReplayDivergence,
                             "answer mismatch at entry " + std::to_string(cursor));
                    ++cursor;
                    if (e.op.kind == SubopKind::End) { ended = true; break; }
                }
                if (!ended) fail(ErrorCode::ReplayDivergence, "trace ended inside a session");
                NodeId victim = run.forest.roots_rtl().at(0);
                s.finish();
                dead[ordinal_of.at(victim)] = true;
                ++run.sessions;
                break;
            }
        }
    }
    if (cursor != entries.size())
        fail(ErrorCode::ReplayDivergence,
             std::to_string(entries.size() - cursor) + " unconsumed trace entries");
    run.entries = entries;
    return run;
}

int cmd_trace_record(const std::string& out_path, const std::string& scenario,
                     const std::string& workload_path, long long n, std::uint64_t seed,
                     const std::string& algorithm, const RankParams& params, int rho) {
    const AlgorithmInfo& algo = algorithm_or_fail(algorithm);
    Workload ops;
    if (!workload_path.empty()) {
        std::ifstream in(workload_path);
        if (!in) fail(ErrorCode::ParseError, "cannot read workload: " + workload_path);
        ops = read_workload(in);
    } else if (!scenario.empty()) {
        ops = build_scenario(scenario, int(n), seed);
    } else {
        fail(ErrorCode::ParseError, "record needs --scenario or --workload");
    }
    TraceRun run = record_run(ops, algo.program, params, rho);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorCode::ParseError, "cannot open for writing: " + out_path);
    write_trace(out, run.entries,
                trace_headers(algorithm, params, rho, ops, run.forest.snapshot_structure()));
    std::cout << "recorded " << run.entries.size() << " entries, " << run.sessions
              << " sessions to " << out_path << "\n";
    return 0;
}

int cmd_trace_replay(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot read trace: " + path);
    std::ostringstream raw;
    raw << in.rdbuf();
    std::istringstream text(raw.str());
    ParsedTrace parsed = read_trace(text);

    std::string algorithm, snapshot;
    bool have_snapshot = false;
    RankParams params{};
    int rho = 0;
    Workload ops;
    for (const std::string& c : parsed.comments) {
        std::size_t start = c.find_first_not_of("# ");
        std::string body = start == std::string::npos ? "" : c.substr(start);
        std::size_t sep = body.find(" = ");
        if (sep == std::string::npos)
            fail(ErrorCode::ParseError, "malformed trace header: " + c);
        std::string key = body.substr(0, sep), value = body.substr(sep + 3);
        if (key == "algorithm") algorithm = value;
        else if (key == "d") params.d = std::stoi(value);
        else if (key == "W") params.W = std::stoi(value);
        else if (key == "T") params.T = std::stoll(value);
        else if (key == "rho") rho = std::stoi(value);
        else if (key == "op") ops.push_back(parse_seq_op(value));
        else if (key == "snapshot") { snapshot = value; have_snapshot = true; }
        else fail(ErrorCode::ParseError, "unknown trace header key: " + key);
    }
    if (algorithm.empty() || rho == 0 || !have_snapshot)
        fail(ErrorCode::ParseError, "trace header incomplete: " + path);
    params.validate();

    TraceRun run = replay_run(ops, parsed.entries, params, rho);
    std::string terminal = run.forest.snapshot_structure();
    if (terminal != snapshot) {
        std::cout << "replay FAIL: terminal snapshot differs\n  recorded " << snapshot
                  << "\n  replayed " << terminal << "\n";
        return 1;
    }
    std::ostringstream again;
    write_trace(again, run.entries, trace_headers(algorithm, params, rho, ops, terminal));
    if (again.str() != raw.str()) {
        std::cout << "replay FAIL: re-serialization is not byte-identical\n";
        return 1;
    }
    std::cout << "replay ok: " << parsed.entries.size() << " entries, " << run.sessions
              << " sessions, snapshot verified, byte-stable\n";
    return 0;
}

// --------------------------------------------------------------- enumerate

int cmd_enumerate(int n, int cap) {
    bool all_ok = true;
    for (int i = 1; i <= n; ++i) {
        MarkedForestCount mc = enumerate_marked_forests(i, cap);
        unsigned long long cat = (unsigned long long)catalan_recurrence(i);
        bool ok = mc.shapes == cat && mc.marked == cat << i;
        all_ok = all_ok && ok;
        std::cout << "n=" << i << " shapes=" << mc.shapes << " marked=" << mc.marked
                  << " catalan=" << cat << " log2_bound=" << std::log2(double(mc.marked))
                  << (ok ? " ok" : " MISMATCH") << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"suboperation-level priority-queue laboratory"};
    app.require_subcommand(1);

    // adversary
    AdversaryArgs adv;
    CLI::App* c_adv = app.add_subcommand("adversary", "run the sequence-set adversary");
    adv.opt["n"] = c_adv->add_option("--n", adv.n, "initial forest size");
    adv.opt["k"] = c_adv->add_option("--k", adv.k, "rounds");
    adv.opt["mode"] = c_adv->add_option("--mode", adv.mode, "exact or ledger");
    adv.opt["algorithm"] = c_adv->add_option("--algorithm", adv.algorithm, "extract-min program");
    adv.opt["d"] = c_adv->add_option("--d", adv.d, "efficiency halfwidth (w = 2d+1)");
    adv.opt["W"] = c_adv->add_option("--W", adv.W, "efficiency window");
    adv.opt["T"] = c_adv->add_option("--T", adv.T, "run length");
    adv.opt["a"] = c_adv->add_option("--a", adv.a, "run length exponent (T = 2^a * w)");
    adv.opt["rho"] = c_adv->add_option("--rho", adv.rho, "register count");
    adv.opt["q"] = c_adv->add_option("--q", adv.q, "permutation width (0 = mode default)");
    adv.opt["m"] = c_adv->add_option("--m", adv.m, "ledger permutation multiplier");
    adv.opt["exact-cap"] = c_adv->add_option("--exact-cap", adv.exact_cap, "exact-mode member cap");
    adv.opt["branch-cap"] = c_adv->add_option("--branch-cap", adv.branch_cap, "ledger branch cap");
    c_adv->add_flag("--no-monotone", adv.no_monotone, "skip the monotone-rank audit");
    c_adv->add_flag("--differential-rank", adv.differential,
                    "recompute every rank from scratch after each mutation");
    c_adv->add_option("--config", adv.config_path, "key/value config file (flags override)");
    c_adv->add_option("--out", adv.out_path, "report file (default stdout)");
    adv.opt["T"]->excludes(adv.opt["a"]);

    // verify-lemmas
    long long vl_n = 64, vl_trials = 100;
    std::uint64_t vl_seed = 1;
    std::string vl_algorithm = "two-pass";
    int vl_d = 1, vl_W = 1, vl_enum_n = 6;
    long long vl_T = 4;
    CLI::App* c_vl = app.add_subcommand("verify-lemmas", "run the finite lemma suites");
    c_vl->add_option("--n", vl_n, "forest size for the generated and adversary runs");
    c_vl->add_option("--trials", vl_trials, "monotone sequences to generate");
    c_vl->add_option("--seed", vl_seed, "base seed for the generated sequences");
    c_vl->add_option("--algorithm", vl_algorithm, "extract-min program");
    c_vl->add_option("--d", vl_d, "efficiency halfwidth");
    c_vl->add_option("--W", vl_W, "efficiency window");
    c_vl->add_option("--T", vl_T, "run length (default 4 keeps the size bound tight)");
    c_vl->add_option("--enum-n", vl_enum_n, "largest size for exhaustive enumeration");

    // bench
    std::string b_scenario = "sorted", b_algorithm = "two-pass", b_out;
    long long b_n = 256, b_T = 3072;
    std::uint64_t b_seed = 1;
    int b_d = 1, b_W = 1;
    bool b_no_check = false;
    CLI::App* c_bench = app.add_subcommand("bench", "run a workload scenario and report costs");
    c_bench->add_option("--scenario", b_scenario, "sorted, reversed, zero, random, or mixed");
    c_bench->add_option("--n", b_n, "scenario size");
    c_bench->add_option("--seed", b_seed, "scenario seed");
    c_bench->add_option("--algorithm", b_algorithm, "extract-min program");
    c_bench->add_option("--d", b_d, "efficiency halfwidth");
    c_bench->add_option("--W", b_W, "efficiency window");
    c_bench->add_option("--T", b_T, "run length");
    c_bench->add_flag("--no-check", b_no_check, "skip the sorted-multiset oracle");
    c_bench->add_option("--out", b_out, "report file (default stdout)");

    // trace
    CLI::App* c_trace = app.add_subcommand("trace", "record or replay suboperation traces");
    c_trace->require_subcommand(1);
    std::string tr_out, tr_scenario, tr_workload, tr_algorithm = "two-pass";
    long long tr_n = 16, tr_T = 3072;
    std::uint64_t tr_seed = 1;
    int tr_d = 1, tr_W = 1, tr_rho = kDefaultRho;
    CLI::App* c_rec = c_trace->add_subcommand("record", "run a workload and write its trace");
    c_rec->add_option("--out", tr_out, "trace file to write")->required();
    CLI::Option* o_sc = c_rec->add_option("--scenario", tr_scenario, "built-in scenario name");
    CLI::Option* o_wl = c_rec->add_option("--workload", tr_workload, "workload file to run");
    o_sc->excludes(o_wl);
    o_wl->excludes(o_sc);
    c_rec->add_option("--n", tr_n, "scenario size");
    c_rec->add_option("--seed", tr_seed, "scenario seed");
    c_rec->add_option("--algorithm", tr_algorithm, "extract-min program");
    c_rec->add_option("--d", tr_d, "efficiency halfwidth");
    c_rec->add_option("--W", tr_W, "efficiency window");
    c_rec->add_option("--T", tr_T, "run length");
    c_rec->add_option("--rho", tr_rho, "register count");
    std::string rp_path;
    CLI::App* c_rep = c_trace->add_subcommand("replay", "verify a recorded trace end to end");
    c_rep->add_option("file", rp_path, "trace file")->required();

    // enumerate
    int e_n = 6, e_cap = 10;
    CLI::App* c_enum = app.add_subcommand("enumerate", "count marked forests exhaustively");
    c_enum->add_option("--n", e_n, "largest size to enumerate");
    c_enum->add_option("--cap", e_cap, "enumeration size cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_adv)) return cmd_adversary(adv);
        if (app.got_subcommand(c_vl))
            return cmd_verify_lemmas(vl_n, vl_trials, vl_seed, vl_algorithm,
                                     RankParams{vl_d, vl_W, vl_T}, vl_enum_n);
        if (app.got_subcommand(c_bench))
            return cmd_bench(b_scenario, b_n, b_seed, b_algorithm, RankParams{b_d, b_W, b_T},
                             !b_no_check, b_out);
        if (app.got_subcommand(c_trace)) {
            if (c_trace->got_subcommand(c_rec))
                return cmd_trace_record(tr_out, tr_scenario, tr_workload, tr_n, tr_seed,
                                        tr_algorithm, RankParams{tr_d, tr_W, tr_T}, tr_rho);
            return cmd_trace_replay(rp_path);
        }
        if (app.got_subcommand(c_enum)) return cmd_enumerate(e_n, e_cap);
    } catch (const VmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::ParseError:
            case ErrorCode::InvalidWorkload:
            case ErrorCode::CapExceeded:
                return 2;
            default:
                return 1;
        }
    }
    return 2;
}
