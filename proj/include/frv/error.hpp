#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frv {

/// Failure categories raised by the numerical modules. The CLI maps every
/// one of these to exit status 1.
enum class ErrorCode {
    InvalidArgument,
    GridTooShort,
    NonPositive,
    NotPowerLike,
    DifferentiationUnstable,
    DomainError,
    OutOfRange,
    NotMonotone,
    TurningPoint,
    StepFailure,
    IntegrationError,
    Singular,
    Complex,
    CriticalGamma,
    BoundViolation,
    DegenerateBounds,
    MissingDerivatives,
    Pole,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace frv
