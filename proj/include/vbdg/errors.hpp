#pragma once

#include <stdexcept>
#include <string>

namespace vbdg {

/// Raised for precondition violations (bad sizes, mismatched meshes, invalid flux weights).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the discrete problem cannot be carried forward: singular projection
/// systems or non-finite coefficients after a Runge-Kutta stage.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what, int stage = -1)
        : std::runtime_error(what), stage_(stage) {}

    /// RK stage index (1-based) that produced the failure, or -1 when not applicable.
    int stage() const noexcept { return stage_; }

private:
    int stage_;
};

} // namespace vbdg
