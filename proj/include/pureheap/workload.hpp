#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pureheap/algorithms.hpp"
#include "pureheap/forest.hpp"

namespace pureheap {

// One line of a workload file.  Decrease-key names its target by insert
// ordinal: the 0-based position of the insert that created the node.
struct SeqOp {
    enum Kind { Insert, DecreaseKey, DecreaseKeyNegInf, ExtractMin } kind;
    long long value = 0;   // Insert
    long long target = 0;  // DecreaseKey / DecreaseKeyNegInf: insert ordinal
    long long delta = 0;   // DecreaseKey
};

using Workload = std::vector<SeqOp>;

std::string format_seq_op(const SeqOp& op);
SeqOp parse_seq_op(const std::string& line);  // ParseError on malformed input

void write_workload(std::ostream& out, const Workload& w);
// Ignores blank lines and '#' comments.
Workload read_workload(std::istream& in);

// Canned generators.  "sorted": ascending inserts then a full drain.
// "reversed": descending inserts then a drain.  "zero": equal keys.
// "random": shuffled values then a drain.  "mixed": interleaved inserts,
// decrease-keys on random live nodes, and extract-mins, ending empty.
Workload build_scenario(const std::string& name, int n, std::uint64_t seed);
std::vector<std::string> scenario_names();

struct WorkloadResult {
    CostAccount costs;                    // totals for the whole run
    long long operations = 0;             // workload lines executed
    std::vector<long long> em_subops;     // per-extract-min suboperation count
    std::vector<long long> removed;       // extracted keys in order
    double amortized_em() const;          // mean of em_subops (0 if none)
    long long max_em() const;
};

// Runs the workload from an empty forest.  With `check` set, every
// extract-min is verified against a sorted-multiset oracle and any
// disagreement throws.  InvalidWorkload on extract-min-when-empty or a
// decrease-key ordinal that is out of range or already removed.
WorkloadResult run_workload(const Workload& w, const ExtractMinProgram& program,
                            const RankParams& params = {}, bool check = true);

}  // namespace pureheap
