#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pureheap/forest.hpp"
#include "pureheap/session.hpp"
#include "pureheap/subop.hpp"

namespace pureheap {

// The only view of the forest an extract-min program gets: issue a
// suboperation, read the answer.  A program that consults nothing else is
// deterministic given the answer sequence, which is what replay and the
// sequence-set pruning both rely on.
class SubopFacade {
  public:
    virtual ~SubopFacade() = default;
    virtual std::optional<bool> apply(const Suboperation& op) = 0;
};

class SessionFacade : public SubopFacade {
  public:
    explicit SessionFacade(ExtractMinSession& s) : session_(s) {}
    std::optional<bool> apply(const Suboperation& op) override { return session_.apply(op); }

  private:
    ExtractMinSession& session_;
};

// Feeds back a recorded trace: each issued suboperation must match the next
// recorded entry (ReplayDivergence otherwise) and receives the recorded
// answer.  Exhausting the program with entries left over is also divergence.
class ReplayFacade : public SubopFacade {
  public:
    explicit ReplayFacade(const Trace& trace) : trace_(trace) {}
    std::optional<bool> apply(const Suboperation& op) override;
    bool exhausted() const { return next_ == trace_.size(); }
    std::size_t consumed() const { return next_; }

  private:
    const Trace& trace_;
    std::size_t next_ = 0;
};

// An extract-min program drives one session from fresh registers to End.
using ExtractMinProgram = std::function<void(SubopFacade&)>;

void two_pass_program(SubopFacade& f);
void multipass_program(SubopFacade& f);

struct AlgorithmInfo {
    std::string name;
    ExtractMinProgram program;
};

const std::vector<AlgorithmInfo>& algorithm_registry();
const AlgorithmInfo* find_algorithm(const std::string& name);  // nullptr if unknown

struct ExtractMinOutcome {
    Key removed;
    NodeId victim = kNoNode;
    Trace trace;
    std::vector<NodeId> newly_marked;  // marks flipped on during the session
    long long subops = 0;              // End included
};

// One full extract-min: open a session, run the program, finish.
ExtractMinOutcome run_extract_min(Forest& forest, const ExtractMinProgram& program,
                                  int rho = kDefaultRho);

}  // namespace pureheap
