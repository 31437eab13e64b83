#include "nonlocal/errors.hpp"

namespace nonlocal {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NonIntegrable: return "NonIntegrable";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::MethodDomainMismatch: return "MethodDomainMismatch";
        case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
        case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
        case ErrorKind::CalibrationFailed: return "CalibrationFailed";
        case ErrorKind::DiagonalSingularity: return "DiagonalSingularity";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::NegativeInput: return "NegativeInput";
        case ErrorKind::SearchFailed: return "SearchFailed";
        case ErrorKind::ParityError: return "ParityError";
        case ErrorKind::InsufficientDecay: return "InsufficientDecay";
        case ErrorKind::CFLCollapse: return "CFLCollapse";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    }
    return "Unknown";
}

}  // namespace nonlocal
