#include "common.hpp"

namespace specwin {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidAxis: return "InvalidAxis";
    case ErrorCode::EmptyInnerShell: return "EmptyInnerShell";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::ExtentTooLarge: return "ExtentTooLarge";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::CycleDegenerate: return "CycleDegenerate";
    case ErrorCode::NonGridSeparation: return "NonGridSeparation";
    case ErrorCode::NonPositiveValues: return "NonPositiveValues";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::InconsistentTables: return "InconsistentTables";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::MissingCheckpoint: return "MissingCheckpoint";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace specwin
