#pragma once

#include <stdexcept>
#include <string>

namespace tsdhsic {

/// Error categories raised by the library. Each maps to one documented
/// failure mode of a public operation.
enum class ErrorCode {
    EmptyInput,
    AllSamplesIdentical,
    DimensionMismatch,
    SizeMismatch,
    TooFewVariables,
    TooFewSamples,
    InstanceTooLarge,
    ModeMismatch,
    DegenerateLength,
    EmptyNull,
    BadOrder,
    SeriesTooShort,
    SingularRegression,
    DegenerateSeries,
    ParseError,
    ContiguityViolation,
    NonFiniteValue,
    InvalidConfig,
};

[[nodiscard]] const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tsdhsic
