#pragma once

#include <stdexcept>
#include <string>

namespace qrho {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
struct DomainError : Error {
    using Error::Error;
};

// Argument outside the numerically supported range.
struct RangeError : Error {
    using Error::Error;
};

// Requested order/size exceeds what the implementation supports.
struct CapabilityError : Error {
    using Error::Error;
};

// Iterative scheme failed to reach its tolerance.  Carries the best
// estimate reached and the residual at the point of giving up.
struct ConvergenceError : Error {
    double best_estimate;
    double residual;
    ConvergenceError(const std::string& msg, double best, double res)
        : Error(msg), best_estimate(best), residual(res) {}
};

// Time stepping became unstable (step size too coarse).
struct StabilityError : Error {
    using Error::Error;
};

}  // namespace qrho
