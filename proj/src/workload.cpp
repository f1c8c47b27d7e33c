#include "pureheap/workload.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace pureheap {

std::string format_seq_op(const SeqOp& op) {
    std::ostringstream out;
    switch (op.kind) {
        case SeqOp::Insert: out << "INS " << op.value; break;
        case SeqOp::DecreaseKey: out << "DK " << op.target << " " << op.delta; break;
        case SeqOp::DecreaseKeyNegInf: out << "DKN " << op.target; break;
        case SeqOp::ExtractMin: out << "EM"; break;
    }
    return out.str();
}

SeqOp parse_seq_op(const std::string& line) {
    std::istringstream in(line);
    std::string word;
    if (!(in >> word)) fail(ErrorCode::ParseError, "empty workload line");
    SeqOp op{};
    if (word == "INS") {
        op.kind = SeqOp::Insert;
        if (!(in >> op.value)) fail(ErrorCode::ParseError, "INS needs a value: " + line);
    } else if (word == "DK") {
        op.kind = SeqOp::DecreaseKey;
        if (!(in >> op.target >> op.delta))
            fail(ErrorCode::ParseError, "DK needs ordinal and delta: " + line);
    } else if (word == "DKN") {
        op.kind = SeqOp::DecreaseKeyNegInf;
        if (!(in >> op.target)) fail(ErrorCode::ParseError, "DKN needs an ordinal: " + line);
    } else if (word == "EM") {
        op.kind = SeqOp::ExtractMin;
    } else {
        fail(ErrorCode::ParseError, "unknown workload op: " + word);
    }
    std::string rest;
    if (in >> rest) fail(ErrorCode::ParseError, "trailing tokens: " + line);
    return op;
}

void write_workload(std::ostream& out, const Workload& w) {
    for (const SeqOp& op : w) out << format_seq_op(op) << "\n";
}

Workload read_workload(std::istream& in) {
    Workload w;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        w.push_back(parse_seq_op(line.substr(start)));
    }
    return w;
}

std::vector<std::string> scenario_names() {
    return {"sorted", "reversed", "zero", "random", "mixed"};
}

Workload build_scenario(const std::string& name, int n, std::uint64_t seed) {
    if (n < 0) fail(ErrorCode::ParseError, "scenario size must be nonnegative");
    std::mt19937_64 rng(seed);
    Workload w;
    auto drain = [&] {
        for (int i = 0; i < n; ++i) w.push_back({SeqOp::ExtractMin, 0, 0, 0});
    };
    if (name == "sorted") {
        for (int i = 0; i < n; ++i) w.push_back({SeqOp::Insert, i, 0, 0});
        drain();
    } else if (name == "reversed") {
        for (int i = n - 1; i >= 0; --i) w.push_back({SeqOp::Insert, i, 0, 0});
        drain();
    } else if (name == "zero") {
        for (int i = 0; i < n; ++i) w.push_back({SeqOp::Insert, 0, 0, 0});
        drain();
    } else if (name == "random") {
        std::vector<long long> values(n);
        std::iota(values.begin(), values.end(), 0);
        std::shuffle(values.begin(), values.end(), rng);
        for (long long v : values) w.push_back({SeqOp::Insert, v, 0, 0});
        drain();
    } else if (name == "mixed") {
        // The generator mirrors the heap exactly: the extract-min victim is
        // the least (key, ordinal) pair, since ties break toward older nodes.
        std::set<std::pair<long long, long long>> sim;
        long long ordinal = 0;
        for (int step = 0; step < 3 * n; ++step) {
            int r = int(rng() % 8);
            if (r < 4 || sim.empty()) {
                long long v = (long long)(rng() % (8 * (std::uint64_t)std::max(n, 1)));
                w.push_back({SeqOp::Insert, v, 0, 0});
                sim.insert({v, ordinal++});
            } else if (r < 6) {
                auto it = sim.begin();
                std::advance(it, rng() % sim.size());
                long long d = (long long)(rng() % 16);
                w.push_back({SeqOp::DecreaseKey, 0, it->second, d});
                std::pair<long long, long long> moved{it->first - d, it->second};
                sim.erase(it);
                sim.insert(moved);
            } else {
                w.push_back({SeqOp::ExtractMin, 0, 0, 0});
                sim.erase(sim.begin());
            }
        }
        while (!sim.empty()) {
            w.push_back({SeqOp::ExtractMin, 0, 0, 0});
            sim.erase(sim.begin());
        }
    } else {
        fail(ErrorCode::ParseError, "unknown scenario: " + name);
    }
    return w;
}

double WorkloadResult::amortized_em() const {
    if (em_subops.empty()) return 0.0;
    long long total = std::accumulate(em_subops.begin(), em_subops.end(), 0ll);
    return double(total) / double(em_subops.size());
}

long long WorkloadResult::max_em() const {
    long long m = 0;
    for (long long v : em_subops) m = std::max(m, v);
    return m;
}

WorkloadResult run_workload(const Workload& w, const ExtractMinProgram& program,
                            const RankParams& params, bool check) {
    Forest f(params);
    WorkloadResult result;
    std::vector<NodeId> by_ordinal;  // insert ordinal -> node
    std::vector<bool> dead;          // removed ordinals
    // (0 for -inf else 1, value, ordinal): matches the key order exactly,
    // since ordinals follow insertion serials.
    using OracleKey = std::tuple<int, long long, long long>;
    std::vector<OracleKey> shadow;   // by ordinal
    std::set<OracleKey> oracle;

    auto check_target = [&](long long t, const char* what) {
        if (t < 0 || t >= (long long)by_ordinal.size())
            fail(ErrorCode::InvalidWorkload,
                 std::string(what) + " ordinal out of range: " + std::to_string(t));
        if (dead[(std::size_t)t])
            fail(ErrorCode::InvalidWorkload,
                 std::string(what) + " on removed ordinal: " + std::to_string(t));
        return (std::size_t)t;
    };

    for (const SeqOp& op : w) {
        switch (op.kind) {
            case SeqOp::Insert: {
                NodeId h = f.insert(op.value);
                by_ordinal.push_back(h);
                dead.push_back(false);
                shadow.push_back({1, op.value, (long long)by_ordinal.size() - 1});
                if (check) oracle.insert(shadow.back());
                break;
            }
            case SeqOp::DecreaseKey: {
                std::size_t t = check_target(op.target, "decrease-key");
                f.decrease_key(by_ordinal[t], op.delta);
                OracleKey next = shadow[t];
                if (std::get<0>(next) == 1) std::get<1>(next) -= op.delta;
                if (check) {
                    oracle.erase(shadow[t]);
                    oracle.insert(next);
                }
                shadow[t] = next;
                break;
            }
            case SeqOp::DecreaseKeyNegInf: {
                std::size_t t = check_target(op.target, "decrease-key");
                f.decrease_key_to_neg_inf(by_ordinal[t]);
                OracleKey next{0, 0, op.target};
                if (check) {
                    oracle.erase(shadow[t]);
                    oracle.insert(next);
                }
                shadow[t] = next;
                break;
            }
            case SeqOp::ExtractMin: {
                if (f.empty())
                    fail(ErrorCode::InvalidWorkload, "extract-min on empty forest");
                ExtractMinOutcome out = run_extract_min(f, program);
                result.em_subops.push_back(out.subops);
                result.removed.push_back(out.removed.neg_inf
                                             ? std::numeric_limits<long long>::min()
                                             : out.removed.value);
                long long victim_ordinal = -1;
                for (std::size_t i = 0; i < by_ordinal.size(); ++i)
                    if (!dead[i] && by_ordinal[i] == out.victim) {
                        victim_ordinal = (long long)i;
                        break;
                    }
                if (victim_ordinal < 0)
                    fail(ErrorCode::InvalidWorkload, "extract-min removed an unknown node");
                dead[(std::size_t)victim_ordinal] = true;
                if (check) {
                    OracleKey want = *oracle.begin();
                    OracleKey got = shadow[(std::size_t)victim_ordinal];
                    if (want != got)
                        fail(ErrorCode::InvalidWorkload,
                             "extract-min removed ordinal " + std::to_string(victim_ordinal) +
                                 ", oracle minimum is ordinal " +
                                 std::to_string(std::get<2>(want)));
                    oracle.erase(want);
                }
                break;
            }
        }
        ++result.operations;
    }
    f.validate();
    result.costs = f.costs();
    return result;
}

}  // namespace pureheap
