#pragma once

#include <qrho/errors.hpp>
#include <qrho/sde/trajectory.hpp>

#include <cmath>
#include <complex>

namespace qrho::wavefunc {

// Frame variables of the auxiliary classical solution xi = sigma e^{i r}.
// The wave functional depends on the trajectory only through these.
struct FrameState {
    double sigma = 1.0;
    double sigma_t = 0.0;
    double r = 0.0;
    double r_t = 1.0;
    double tau = 0.0;
    double omega_in = 1.0;

    // r_t sigma^2 = omega_in is the constraint that makes the family
    // orthonormal; enforced to 1e-8 relative.
    void validate() const {
        if (!(sigma > 0.0)) throw DomainError("FrameState: sigma must be > 0");
        if (!(omega_in > 0.0)) throw DomainError("FrameState: omega_in must be > 0");
        if (!(r_t > 0.0)) throw DomainError("FrameState: r_t must be > 0");
        if (std::fabs(r_t * sigma * sigma - omega_in) > 1e-8 * omega_in)
            throw DomainError("FrameState: r_t sigma^2 = omega_in violated");
    }

    static FrameState in_channel(double omega_in, double t) {
        return {1.0, 0.0, omega_in * t, omega_in, t, omega_in};
    }

    static FrameState from_trajectory(const sde::Trajectory& tr, Eigen::Index i) {
        FrameState f;
        f.sigma = tr.sigma[i];
        f.sigma_t = tr.theta[i] * tr.sigma[i];
        f.r = tr.r[i];
        f.r_t = tr.omega_in / (tr.sigma[i] * tr.sigma[i]);
        f.tau = tr.tau[i];
        f.omega_in = tr.omega_in;
        return f;
    }

    std::complex<double> xi() const {
        return std::polar(sigma, r);
    }
    std::complex<double> xi_dot() const {
        return std::complex<double>(sigma_t, sigma * r_t) * std::polar(1.0, r);
    }
};

// Oscillator frame entering the transition-matrix overlap: the classical
// solution, its derivative, the accumulated phase and the channel frequency.
struct OscFrame {
    std::complex<double> xi{1.0, 0.0};
    std::complex<double> xi_dot{0.0, 1.0};
    double r = 0.0;
    double omega = 1.0;

    static OscFrame from_frame_state(const FrameState& f) {
        return {f.xi(), f.xi_dot(), f.r, f.omega_in};
    }
    // Deterministic channel e^{i omega (t - t_ref)} evaluated at t.
    static OscFrame deterministic(double omega, double t, double t_ref = 0.0) {
        const double ph = omega * (t - t_ref);
        const std::complex<double> x = std::polar(1.0, ph);
        return {x, std::complex<double>(0.0, omega) * x, ph, omega};
    }
};

}  // namespace qrho::wavefunc
