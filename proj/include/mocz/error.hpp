#pragma once

#include <stdexcept>
#include <string>

namespace mocz {

enum class ErrorCode {
    invalid_argument,
    non_convergence,
    degenerate_leading,
    length_mismatch,
    not_positive_definite,
    search_budget_exceeded,
    spectral_zero,
    eta_too_large,
    delta_too_large,
    radius_below_one,
    domain_error,
    underdetermined_estimate,
    config_error,
};

inline const char* to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::degenerate_leading: return "DegenerateLeading";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::search_budget_exceeded: return "SearchBudgetExceeded";
    case ErrorCode::spectral_zero: return "SpectralZero";
    case ErrorCode::eta_too_large: return "EtaTooLarge";
    case ErrorCode::delta_too_large: return "DeltaTooLarge";
    case ErrorCode::radius_below_one: return "RadiusBelowOne";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::underdetermined_estimate: return "UnderdeterminedEstimate";
    case ErrorCode::config_error: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

    // config-type errors map to exit code 2, everything else is numerical (3)
    bool is_config() const noexcept
    {
        return code_ == ErrorCode::config_error || code_ == ErrorCode::invalid_argument
            || code_ == ErrorCode::length_mismatch || code_ == ErrorCode::search_budget_exceeded
            || code_ == ErrorCode::domain_error || code_ == ErrorCode::delta_too_large;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace mocz
