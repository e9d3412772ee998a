#pragma once

#include <qrho/sde/trajectory.hpp>
#include <qrho/wavefunc/frame.hpp>

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace qrho::wavefunc {

// Highest oscillator level handled by the wave-functional machinery.
inline constexpr int kLevelMax = 32;

// Asymptotic in-channel eigenfunction of level n at (x, t).
std::complex<double> psi_in(int n, double x, double t, double omega_in);

// Stochastic wave functional of level n at x for the given frame.
std::complex<double> psi_stc(int n, double x, const FrameState& frame);

// Monte Carlo average of psi_stc over an ensemble at time t, divided by
// the empirical normalization alpha (the L2 norm of the raw mean on the
// grid).  Standard errors are per grid point for the raw mean.
struct PsiAverage {
    Eigen::ArrayXcd psi;        // normalized average
    double alpha = 1.0;         // empirical normalization
    Eigen::ArrayXd std_error;   // per-point standard error of the raw mean
};
PsiAverage psi_br(int n, const Eigen::ArrayXd& x_grid,
                  const std::vector<sde::Trajectory>& ensemble, double t);

}  // namespace qrho::wavefunc
