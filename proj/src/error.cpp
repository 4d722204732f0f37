#include "lgrpo/error.hpp"

namespace lgrpo {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ZeroNormVector: return "ZeroNormVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::MalformedDump: return "MalformedDump";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace lgrpo
