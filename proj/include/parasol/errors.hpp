#pragma once

#include <stdexcept>
#include <string>

namespace parasol {

/// An iterative solver ran out of its iteration budget.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, int iterations_, double residual_)
        : std::runtime_error(what), iterations(iterations_), residual(residual_) {}
    int iterations;
    double residual;
};

/// The time-step solvability condition does not hold for the requested step.
struct StepConditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The monotone iteration produced an increasing or nonpositive iterate.
/// This cannot happen for an M-matrix discretization with a valid
/// supersolution start, so it signals a broken operator or misused tolerances.
struct MonotonicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace parasol
