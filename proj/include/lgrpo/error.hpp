#ifndef LGRPO_ERROR_HPP
#define LGRPO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgrpo {

enum class ErrorCode {
    ZeroNormVector,
    DimensionMismatch,
    NonFiniteValue,
    InvalidArgument,
    GroupTooSmall,
    NoConvergence,
    InvalidSpec,
    MissingLabels,
    LengthMismatch,
    ShapeMismatch,
    EmptyInput,
    BadMagic,
    UnsupportedVersion,
    TruncatedFile,
    LabelOutOfRange,
    MalformedDump,
    IoFailure,
    ConfigError,
};

/// Stable identifier printed in diagnostics, e.g. "TruncatedFile".
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so callers
/// (and the CLI) can tell error classes apart without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace lgrpo

#endif
