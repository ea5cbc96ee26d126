#include "qbm/error.hpp"

namespace qbm {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::ZeroCoupling: return "ZeroCoupling";
        case ErrorCode::NonMonotonicGrid: return "NonMonotonicGrid";
        case ErrorCode::DegenerateWidth: return "DegenerateWidth";
        case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
        case ErrorCode::PoleEvaluation: return "PoleEvaluation";
        case ErrorCode::RootNotBracketed: return "RootNotBracketed";
        case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SizeGuard: return "SizeGuard";
        case ErrorCode::AmplitudeVanishes: return "AmplitudeVanishes";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::MissingProduct: return "MissingProduct";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::UnknownKey:
        case ErrorCode::InvalidValue:
        case ErrorCode::InvalidParams:
        case ErrorCode::ZeroCoupling:
        case ErrorCode::NonMonotonicGrid:
        case ErrorCode::DegenerateWidth:
        case ErrorCode::NonPositiveFrequency:
        case ErrorCode::SizeGuard:
        case ErrorCode::WindowTooShort:
            return true;
        default:
            return false;
    }
}

}  // namespace qbm
