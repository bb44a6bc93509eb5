#pragma once

#include <stdexcept>
#include <string>

namespace ksns {

enum class ErrorCode {
    invalid_field,
    not_supported,
    mean_not_zero,
    out_of_domain,
    invalid_config,
    numerical_breakdown,
    dt_underflow,
    stale_state,
    wrong_model,
    empty_input,
    invalid_exponent,
    invalid_series,
    grid_mismatch,
    config_error,
    scaled_run_failed,
};

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace ksns
