#include "worldfunc/errors.hpp"

namespace worldfunc {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::degenerate_basis: return "degenerate-basis";
    case ErrorKind::undefined_angle: return "undefined-angle";
    case ErrorKind::non_euclidean_regime: return "non-euclidean-regime";
    case ErrorKind::family_undefined: return "family-undefined";
    case ErrorKind::invalid_direction: return "invalid-direction";
    case ErrorKind::solver_failure: return "solver-failure";
    case ErrorKind::evaluation_error: return "evaluation-error";
    case ErrorKind::invalid_state: return "invalid-state";
    }
    return "unknown";
}

bool is_numerical(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::degenerate_basis:
    case ErrorKind::undefined_angle:
    case ErrorKind::non_euclidean_regime:
    case ErrorKind::solver_failure:
    case ErrorKind::evaluation_error:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

}  // namespace worldfunc
