#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbm {

enum class ErrorCode {
    // model
    InvalidParams,
    ZeroCoupling,
    NonMonotonicGrid,
    DegenerateWidth,
    NonPositiveFrequency,
    // spectrum
    PoleEvaluation,
    RootNotBracketed,
    ToleranceNotReached,
    NoConvergence,
    // evolution / langevin
    SizeGuard,
    AmplitudeVanishes,
    WindowTooShort,
    IndexOutOfRange,
    // cli
    ParseError,
    UnknownKey,
    InvalidValue,
    MissingProduct,
    IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

// Config-stage errors map to exit code 2, everything else to 3.
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace qbm
