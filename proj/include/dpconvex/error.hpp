#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpconvex {

enum class ErrorCode {
    DimensionMismatch,
    SingularMatrix,
    NonFiniteInput,
    ZeroPoint,
    StepTooLarge,
    DegenerateConstraint,
    AllSamplesSingular,
    ShapeMismatch,
    ParamOutOfRange,
    InvalidConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type for every failure raised by the library. The code is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace dpconvex
