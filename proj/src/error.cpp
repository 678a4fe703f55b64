#include "tsdhsic/error.hpp"

namespace tsdhsic {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::AllSamplesIdentical: return "AllSamplesIdentical";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::TooFewVariables: return "TooFewVariables";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
        case ErrorCode::ModeMismatch: return "ModeMismatch";
        case ErrorCode::DegenerateLength: return "DegenerateLength";
        case ErrorCode::EmptyNull: return "EmptyNull";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::SingularRegression: return "SingularRegression";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ContiguityViolation: return "ContiguityViolation";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

}  // namespace tsdhsic
