#pragma once

#include <stdexcept>
#include <string>

namespace pureheap {

// Every rejected request carries one of these codes.  The VM validates before
// it mutates, so catching a VmError means the forest and session are exactly
// as they were before the offending call.
enum class ErrorCode {
    PreconditionViolated,     // structural requirement false (e.g. Pair on a non-root)
    PreconditionNotVerified,  // requirement true but not certified by a fresh predicate
    PointerOutOfRange,        // pointer index outside 1..rho
    EmptyForest,              // begin_extract_min on an empty forest
    SessionInProgress,        // snapshot or operation while an extract-min is open
    SessionNotEnded,          // finish_extract_min before End was applied
    SessionClosed,            // suboperation after End
    NegativeDelta,            // decrease_key with delta < 0
    StaleHandle,              // handle refers to a removed node
    InvalidTarget,            // evolution aimed at a node that fails its precondition
    OrderViolation,           // designated-minimum-root not followed by extract-min
    PreconditionUnmet,        // evolution-level structural precondition failed
    ExplosionGuard,           // materialized sequence set exceeded its cap
    NonMonotonicInput,        // sequence fed to the monotone checker is not monotone
    ParseError,               // malformed trace/workload/config text
    ReplayDivergence,         // replayed program issued a different suboperation
    CapExceeded,              // enumeration size beyond the configured cap
    InvalidWorkload,          // workload step impossible (extract-min on empty forest)
};

const char* error_code_name(ErrorCode c);

class VmError : public std::runtime_error {
  public:
    VmError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw VmError(code, what);
}

}  // namespace pureheap
