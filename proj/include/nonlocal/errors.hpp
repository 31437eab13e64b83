#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

enum class ErrorKind {
    InvalidArgument,
    DomainError,
    NonIntegrable,
    GridMismatch,
    MethodDomainMismatch,
    GammaOutOfRange,
    AlphaOutOfRange,
    DeltaOutOfRange,
    CalibrationFailed,
    DiagonalSingularity,
    HypothesisViolation,
    NegativeInput,
    SearchFailed,
    ParityError,
    InsufficientDecay,
    CFLCollapse,
    InsufficientSamples,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class LabError : public std::runtime_error {
public:
    LabError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nonlocal
