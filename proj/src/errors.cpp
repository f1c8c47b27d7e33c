#include "pureheap/errors.hpp"

namespace pureheap {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::PreconditionNotVerified: return "PreconditionNotVerified";
        case ErrorCode::PointerOutOfRange: return "PointerOutOfRange";
        case ErrorCode::EmptyForest: return "EmptyForest";
        case ErrorCode::SessionInProgress: return "SessionInProgress";
        case ErrorCode::SessionNotEnded: return "SessionNotEnded";
        case ErrorCode::SessionClosed: return "SessionClosed";
        case ErrorCode::NegativeDelta: return "NegativeDelta";
        case ErrorCode::StaleHandle: return "StaleHandle";
        case ErrorCode::InvalidTarget: return "InvalidTarget";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
        case ErrorCode::ExplosionGuard: return "ExplosionGuard";
        case ErrorCode::NonMonotonicInput: return "NonMonotonicInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ReplayDivergence: return "ReplayDivergence";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::InvalidWorkload: return "InvalidWorkload";
    }
    return "UnknownError";
}

}  // namespace pureheap
