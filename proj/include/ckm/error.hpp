#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckm {

enum class ErrorCode {
    OrderMismatch,
    NotAUnit,
    NonzeroRemainder,
    OutOfWindow,
    SymbolicUnsupported,
    AxiomViolation,
    AxiomsUnverified,
    WindowExceeded,
    NotHomogeneous,
    MissingStraightening,
    CutoffUnavailable,
    MixedContext,
    InputSchemaError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NonzeroRemainder: return "NonzeroRemainder";
        case ErrorCode::OutOfWindow: return "OutOfWindow";
        case ErrorCode::SymbolicUnsupported: return "SymbolicUnsupported";
        case ErrorCode::AxiomViolation: return "AxiomViolation";
        case ErrorCode::AxiomsUnverified: return "AxiomsUnverified";
        case ErrorCode::WindowExceeded: return "WindowExceeded";
        case ErrorCode::NotHomogeneous: return "NotHomogeneous";
        case ErrorCode::MissingStraightening: return "MissingStraightening";
        case ErrorCode::CutoffUnavailable: return "CutoffUnavailable";
        case ErrorCode::MixedContext: return "MixedContext";
        case ErrorCode::InputSchemaError: return "InputSchemaError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The code identifies the failure class;
/// the message carries the location (index, order, window) where it happened.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ckm
