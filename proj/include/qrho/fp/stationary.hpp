#pragma once

#include <qrho/errors.hpp>
#include <qrho/special/quadrature.hpp>

#include <Eigen/Core>

namespace qrho::fp {

// Scaled stationary flux J0f(x) = 1 / (pi^2 [Ai^2(-x) + Bi^2(-x)]),
// x = lambda * gamma.  Closed Airy route.
double flux_scaled(double x);
double ln_flux_scaled(double x);

// Same object through the quadrature route
//   J0f^{-1} = sqrt(pi) int_0^inf z^{-1/2} exp(-z^3/12 - x z) dz;
// kept independent of the Airy route as a consistency gate.
double flux_scaled_quadrature(double x, const special::QuadratureSpec& spec = {});

// Scaled stationary density Qs(theta_bar) at couplings (lambda, gamma),
// evaluated through the folded form
//   Qs = J0f int_0^inf exp(-lg y - tb^2 y + tb y^2 - y^3/3) dy,  lg = lambda gamma.
double stationary_density(double lambda, double gamma, double theta_bar);
double ln_stationary_density(double lambda, double gamma, double theta_bar);

// d/d theta_bar of ln Qs, by differentiation under the integral sign.
double stationary_density_log_deriv(double lambda, double gamma, double theta_bar);

// Residual of the scaled stationary flux equation
//   (tb^2 + lambda gamma) Qs + Qs' - J0f
// normalized by J0f.  Zero up to quadrature error for the exact density.
double flux_residual_scaled(double lambda, double gamma, double theta_bar);

// Sampled stationary distribution for export/plotting.
struct StationaryDist {
    double lambda = 1.0;
    double gamma = 1.0;
    double j0f_scaled = 0.0;
    Eigen::ArrayXd theta_bar;
    Eigen::ArrayXd q_s;
};
StationaryDist make_stationary_dist(double lambda, double gamma,
                                    const Eigen::ArrayXd& theta_bar_grid);

// Integrated density of states N_Sigma(E) and the bound-state count
// N_E(E), E > 0, with Ebar = E / eps^{2/3}:
//   N_Sigma = eps^{1/3} / (pi^2 A(-Ebar)),  N_E = eps^{1/3} / (pi^2 A(+Ebar)).
double n_sigma(double e, double epsilon);
double n_e(double e, double epsilon);

// P_E = N_E / N_Sigma = A(-Ebar) / A(Ebar), in (0, 1] for E > 0.
double p_e(double e, double epsilon);

// Small-dt transition kernel of the phase process: Gaussian density in
// theta (variance 2 eps dt, drifted mean) plus the deterministic phi image.
struct KernelValue {
    double theta_density;
    double phi_next;
};
KernelValue transition_kernel(double theta, double phi, double theta_prev,
                              double phi_prev, double dt, double epsilon, double u0);

}  // namespace qrho::fp
