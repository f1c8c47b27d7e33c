#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pureheap/workload.hpp"

namespace pureheap {

// A workload is monotone when every decrease-key targets a root, a marked
// node, or a child of the designated minimum root — the node the next
// extract-min will remove.  Under such sequences no node's rank may drop at
// an operation boundary before it becomes the designated minimum root.

struct RankDecrease {
    long long op_index = 0;   // boundary where the drop was observed
    long long ordinal = 0;    // insert ordinal of the node
    int rank_before = 0;
    int rank_after = 0;
};

struct MonotoneReport {
    long long operations = 0;
    long long boundaries_checked = 0;       // (node, boundary) rank comparisons
    std::vector<RankDecrease> decreases;    // expected empty
    bool clean() const { return decreases.empty(); }
};

// Two passes over the workload: the first records every extract-min victim,
// the second replays with that lookahead, validating each decrease-key
// against the definition (NonMonotonicInput on violation) and comparing
// per-node ranks across operation boundaries.  A node is exempt from the
// boundary where it is the designated minimum root.
MonotoneReport check_monotone_rank(const Workload& w, const ExtractMinProgram& program,
                                   const RankParams& params);

// Builds a monotone workload by construction, interleaving inserts,
// decrease-keys on live roots and marked nodes, and designate-then-extract
// bursts that exercise the children-of-the-designated-root clause.
Workload generate_monotone_workload(int steps, const RankParams& params,
                                    const ExtractMinProgram& program, std::uint64_t seed);

}  // namespace pureheap
