#pragma once

#include <stdexcept>
#include <string>

namespace worldfunc {

enum class ErrorKind {
    invalid_input,
    degenerate_basis,
    undefined_angle,
    non_euclidean_regime,
    family_undefined,
    invalid_direction,
    solver_failure,
    evaluation_error,
    invalid_state,
};

const char* to_string(ErrorKind kind) noexcept;

/// True for failures that arise from the numerics rather than from the
/// caller's input (the CLI maps these to exit code 2).
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace worldfunc
