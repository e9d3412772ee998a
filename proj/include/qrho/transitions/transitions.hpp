#pragma once

#include <qrho/errors.hpp>
#include <qrho/special/quadrature.hpp>

namespace qrho::transitions {

// gamma(rho) = ((1 + sqrt(rho)) / (1 - sqrt(rho)))^2 for the step barrier.
// rho in [0, 1); rho = 1 is total reflection.
double gamma_of_rho(double rho);

struct TransitionResult {
    double lambda = 0.0;
    double lambda_plus = 0.0;  // +inf marks the simplified (eps_plus -> 0) form
    double rho = 0.0;
    double gamma = 1.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double delta = 0.0;  // sqrt(1-rho) (i1^2 + i2^2)
};

// Vacuum-vacuum transition probability with both channels averaged over
// their stationary distributions (two-sided double quadrature).
TransitionResult delta_00(double lambda, double lambda_plus, double rho,
                          double tolerance = 1e-6);

// eps_plus -> 0 limit: the out channel collapses to a wave function and a
// single quadrature over the in-channel stationary distribution remains.
TransitionResult delta_00_simplified(double lambda, double rho,
                                     double tolerance = 1e-6);

}  // namespace qrho::transitions
