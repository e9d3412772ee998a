#pragma once

#include <qrho/errors.hpp>

#include <algorithm>
#include <cmath>

namespace qrho::sde {

// Deterministic frequency law Omega_0(t) between the in and out channels,
// plus the mean frequency-squared shift f0 that switches on with the
// fluctuations at t_c.
struct FrequencyProfile {
    enum class Kind { kConstant, kStep, kSmoothTanh };

    Kind kind = Kind::kConstant;
    double omega_in = 1.0;
    double omega_out = 1.0;
    double t_c = 0.0;
    double smoothing_scale = 1.0;  // smooth-tanh only
    double f0 = 0.0;

    static FrequencyProfile constant(double omega, double f0 = 0.0, double t_c = 0.0) {
        FrequencyProfile p;
        p.kind = Kind::kConstant;
        p.omega_in = p.omega_out = omega;
        p.f0 = f0;
        p.t_c = t_c;
        p.validate();
        return p;
    }
    static FrequencyProfile step(double omega_in, double omega_out, double t_c,
                                 double f0 = 0.0) {
        FrequencyProfile p;
        p.kind = Kind::kStep;
        p.omega_in = omega_in;
        p.omega_out = omega_out;
        p.t_c = t_c;
        p.f0 = f0;
        p.validate();
        return p;
    }
    static FrequencyProfile smooth_tanh(double omega_in, double omega_out, double t_c,
                                        double smoothing_scale, double f0 = 0.0) {
        FrequencyProfile p;
        p.kind = Kind::kSmoothTanh;
        p.omega_in = omega_in;
        p.omega_out = omega_out;
        p.t_c = t_c;
        p.smoothing_scale = smoothing_scale;
        p.f0 = f0;
        p.validate();
        return p;
    }

    void validate() const {
        if (!(omega_in > 0.0)) throw DomainError("FrequencyProfile: omega_in must be > 0");
        if (!(omega_out > 0.0)) throw DomainError("FrequencyProfile: omega_out must be > 0");
        if (kind == Kind::kSmoothTanh && !(smoothing_scale > 0.0))
            throw DomainError("FrequencyProfile: smoothing_scale must be > 0");
        const double wmin = std::min(omega_in, omega_out);
        if (!(wmin * wmin + std::min(f0, 0.0) > 0.0))
            throw DomainError("FrequencyProfile: U0 = Omega0^2 + f0 must stay > 0");
    }

    double omega0(double t) const {
        switch (kind) {
            case Kind::kConstant:
                return omega_in;
            case Kind::kStep:
                return t < t_c ? omega_in : omega_out;
            case Kind::kSmoothTanh:
                return 0.5 * (omega_in + omega_out) +
                       0.5 * (omega_out - omega_in) * std::tanh((t - t_c) / smoothing_scale);
        }
        return omega_in;
    }

    // U0(t) = Omega0(t)^2 (+ f0 once the fluctuation channel is open).
    double u0(double t) const {
        const double w = omega0(t);
        return w * w + (t >= t_c ? f0 : 0.0);
    }

    double u0_max() const {
        const double wmax = std::max(omega_in, omega_out);
        return wmax * wmax + std::max(f0, 0.0);
    }
};

}  // namespace qrho::sde
