#pragma once
#include <stdexcept>
#include <string>

namespace qcs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrand returned NaN or Inf.
struct NonFiniteError : Error {
    using Error::Error;
};

// Evaluation cap reached before the requested tolerance.
struct BudgetExceededError : Error {
    using Error::Error;
};

// Extrapolation (PV, boundary limits) failed to stabilize.
struct NoConvergenceError : Error {
    using Error::Error;
};

// Bad geometric or analytic input (degenerate disk, zero derivative, ...).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace qcs
