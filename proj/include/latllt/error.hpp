#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latllt {

/// Machine-readable failure categories. The CLI prints `error_name(code)`
/// and exits with status 2 for every one of these.
enum class ErrorCode {
    SumNotOne,
    DegenerateLaw,
    NonMaximalSpan,
    InvalidInput,
    SupportTooLarge,
    BadOrder,
    NoBernoulliPart,
    InadmissibleTau,
    DomainError,
    EmptyGrid,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::DegenerateLaw: return "DegenerateLaw";
    case ErrorCode::NonMaximalSpan: return "NonMaximalSpan";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NoBernoulliPart: return "NoBernoulliPart";
    case ErrorCode::InadmissibleTau: return "InadmissibleTau";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace latllt
