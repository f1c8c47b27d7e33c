#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pureheap/algorithms.hpp"
#include "pureheap/forest.hpp"
#include "pureheap/position.hpp"
#include "pureheap/rank.hpp"
#include "pureheap/report.hpp"
#include "pureheap/workload.hpp"

namespace pureheap {

// Exact mode materializes every sequence and asserts the set-wide
// invariants pairwise (identical traces, pairwise-distinct snapshots, the
// Catalan ceiling); past the cap it refuses with ExplosionGuard.  Ledger
// mode carries the same materialized set while it fits, but instead of
// failing at the cap it degrades to a single representative and from then
// on tracks distinctness analytically.
enum class AdvMode { Exact, Ledger };

struct AdversaryConfig {
    long long n = 64;
    int k = 4;                    // rounds
    AdvMode mode = AdvMode::Ledger;
    std::string algorithm = "two-pass";
    // d, W, T. The tiny default run length keeps the size classifier's
    // thresholds inside desk-scale forests; the stock 3072 would label
    // every round big and the permute evolution would never fire.
    RankParams params{1, 1, 4};
    int rho = kDefaultRho;
    // Permuted-subset size; 0 picks the mode default (exact: min(set, 5);
    // ledger: ceil(m * log2 n / max(log2 d, 1)), the analysis's full size).
    int q = 0;
    int m = 1;                    // subset-size constant for the ledger default
    long long exact_cap = 4096;   // exact mode: ExplosionGuard past this
    long long branch_cap = 4096;  // ledger mode: degrade past this
    bool check_monotone = true;   // replay the survivor through the validator
    bool differential_rank = false;  // from-scratch rank check on every refresh

    double f() const { return params.f(); }
    double g() const { return params.g(); }
    void validate() const;  // throws VmError on nonsense

    // Plain-text key/value round trip, one "key = value" line per field.
    Report to_report() const;
    static AdversaryConfig from_report(const Report& rep);
};

// One member of the sequence set: the forest it has evolved and the full
// replayable operation history that produced it.
struct SequenceMember {
    Forest forest;
    Workload ops;
    Trace last_em_trace;             // most recent extract-min, post-pruning
    NodeId pending_victim = kNoNode; // set by a -inf decrease, checked by the EM
};

// Per-evolution distinctness bookkeeping: the materialized count (or -1
// once degraded) next to the analytic running value the charge formulas
// give.  The analytic value is a lower-bound trail; while the set is
// materialized the true distinctness is log2(count).
struct TrailEntry {
    std::string evolution;
    long long count = 0;      // members after the evolution, -1 if degraded
    double bound = 0;         // analytic distinctness after its charge
};

struct RoundRecord {
    bool small = false;
    long long acem = 0;       // suboperations of the round's extract-min
    long long vs = 0;         // violation-set size
    long long dc = 0;         // permutation decrease-keys (0 for big rounds)
    // Classification the big/small evolution settled on.
    long long root_count = -1;   // -1 = many-roots
    long long child_count = -1;  // -1 = many children / not classified
    std::string p;               // position of the largest-subtree root, "-" if none
    std::vector<std::string> violations;  // positions at extract-min finish
    long long count_after = 0;   // members at round end, -1 if degraded
    double distinctness_delta = 0;  // analytic bound delta over the round

    long long cost() const { return 2 + dc + acem + vs; }
};

struct BigSmallOutcome {
    std::optional<Position> p;  // absent in the many-roots case
    bool small = false;
};

struct ExtractMinEvolution {
    std::vector<Position> violations;  // sorted, identical across survivors
    long long acem = 0;
};

struct AdversaryRunReport {
    AdversaryConfig config;
    std::vector<RoundRecord> rounds;
    std::vector<TrailEntry> trail;   // one entry per evolution, "init" first

    long long final_count = 1;
    bool degraded = false;
    double distinctness = 0;         // log2(count), or the analytic value once degraded
    double bound_distinctness = 0;   // analytic trail value at the end

    long long cost_initial = 0;      // the n seed inserts
    long long cost_rounds = 0;       // forest-accounted cost of the k rounds
    long long eq1_rhs = 0;           // sum of (2 + dc + acem + vs)
    bool eq1_exact = false;

    long long sum_vs = 0;
    long long pairings = 0;
    bool eq2_holds = false;          // w * sum_vs <= pairings

    long long small_rounds = 0;
    double fraction_small = 0;
    bool fracsmall_holds = false;    // >= half the rounds small (reported, not asserted)

    bool boundaries_clean = false;   // size n + fully unmarked at every round edge
    bool subdistinct_clean = false;  // violation positions identical across survivors
    bool victims_clean = false;      // every -inf designation removed by its extract-min
    bool maxdistinct_ok = false;     // materialized count stayed under the ceiling
    bool monotone_clean = false;     // survivor history passes the rank validator
    long long monotone_decreases = 0;   // -1 when the check was disabled
    long long permutable_short = 0;  // permutes whose set fell below the analysis size
    long long child_outranked_parent = 0;

    Report to_report() const;
};

// The sequence-set engine: a set of operation sequences evolved in lock
// step, pruned to keep them algorithmically indistinguishable and
// terminal-structure distinct.  Evolutions are public so tests and the
// round driver can compose them; run() executes the round loop.
class Adversary {
  public:
    explicit Adversary(const AdversaryConfig& cfg);

    const AdversaryConfig& config() const { return cfg_; }
    const std::vector<SequenceMember>& members() const { return members_; }
    const SequenceMember& representative() const { return members_.front(); }
    long long count() const { return degraded_ ? -1 : (long long)members_.size(); }
    bool degraded() const { return degraded_; }
    double distinctness() const;        // log2(count) until degraded
    double bound_distinctness() const { return bound_d_; }
    const std::vector<TrailEntry>& trail() const { return trail_; }

    // The six evolutions.  Each validates its precondition against every
    // member before mutating any of them.
    void evolve_insert();
    // Restores key = -rank at pos; pos must be a root or marked in every
    // terminal structure (InvalidTarget).  `to_neg_inf` is the small-round
    // flavor that takes the key to -infinity instead.
    void evolve_decrease_key(const Position& pos, bool to_neg_inf = false);
    // -inf decrease plus the ordering obligation: the next evolution must
    // be the extract-min (anything else raises OrderViolation).
    void evolve_designated_min_root(const Position& pos);
    ExtractMinEvolution evolve_extract_min();
    BigSmallOutcome evolve_big_small();
    long long evolve_permute();  // returns the decrease-keys issued per sequence

    RoundRecord run_round();
    AdversaryRunReport run();  // k rounds plus the identity verdicts

    // Observation hook for lemma collectors: called with the representative
    // forest at the named stages ("round-start", "post-extract-min",
    // "post-violation-dks", "round-end").
    std::function<void(const Forest&, const std::string&)> on_checkpoint;

  private:
    NodeId resolve(const SequenceMember& m, const Position& pos) const;
    void require_no_pending(const char* evolution) const;
    void note_evolution(const std::string& name, double bound_delta);
    void exact_asserts(const std::string& evolution);
    void checkpoint(const std::string& stage);
    long long vio_dk_pass(std::vector<Position>& order);  // decrease-keys all marked nodes
    double em_charge(long long acem) const;
    double big_small_charge() const;

    AdversaryConfig cfg_;
    ExtractMinProgram program_;
    std::vector<SequenceMember> members_;
    bool degraded_ = false;
    bool dmr_pending_ = false;
    double bound_d_ = 0;
    double log2_two_sigma_ = 0;
    std::vector<TrailEntry> trail_;
    std::vector<RoundRecord> rounds_;
    bool subdistinct_clean_ = true;
    bool boundaries_clean_ = true;
    bool victims_clean_ = true;
    bool maxdistinct_ok_ = true;
    long long permutable_short_ = 0;
};

AdversaryRunReport run_adversary(const AdversaryConfig& cfg);

}  // namespace pureheap
