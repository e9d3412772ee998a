#pragma once

#include <qrho/sde/frequency.hpp>
#include <qrho/sde/noise.hpp>

#include <Eigen/Core>
#include <string>
#include <vector>

namespace qrho::sde {

// Real/imaginary parts of the complex phase Phi = theta + i phi.
struct ComplexPhase {
    double theta = 0.0;
    double phi = 0.0;
};

struct Reinjection {
    double time;
    int sign;  // boundary the trajectory escaped through (-1: theta -> -inf)
};

// One sampled path of the phase SDE together with the reconstructed frame
// series sigma = exp(int theta), r = Omega_in * tau, tau = int dt/sigma^2
// and Lambda = theta sigma^2.
struct Trajectory {
    Eigen::ArrayXd time_grid;
    Eigen::ArrayXd theta;
    Eigen::ArrayXd phi;
    Eigen::ArrayXd sigma;
    Eigen::ArrayXd r;
    Eigen::ArrayXd tau;
    Eigen::ArrayXd lambda_frame;
    std::vector<Reinjection> reinjections;
    double omega_in = 1.0;
    double dt = 0.0;  // integration step (nodes may be thinned)

    Eigen::Index size() const { return time_grid.size(); }
    // Index of the node closest to t (time grid is uniform).
    Eigen::Index node_at(double t) const;
};

struct IntegrationParams {
    FrequencyProfile profile;
    NoiseSpec noise;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;
    double theta_max = 0.0;     // <= 0 selects the default below
    Eigen::Index store_every = 1;  // node thinning for stored series

    double effective_theta_max() const {
        if (theta_max > 0.0) return theta_max;
        return 50.0 * std::max(profile.omega_in, std::cbrt(std::max(noise.epsilon, 0.0)));
    }
    void validate() const;
};

// Euler-Maruyama integration of
//   theta' = -(theta^2 - phi^2 + U0(t)) - F(t),   phi' = -2 phi theta
// from the in-channel fixed point (0, Omega_in) at t0, with reinjection
// at +theta_max whenever theta falls through -theta_max.
Trajectory integrate_phase(const IntegrationParams& params);

// n_traj independent trajectories; trajectory i uses stream_id = i.  The
// result is a pure function of (seed, n_traj, params) regardless of the
// number of worker threads.
std::vector<Trajectory> ensemble(const IntegrationParams& params, int n_traj);

// theta(t1) for each of n_traj trajectories, without storing paths.
Eigen::ArrayXd ensemble_final_theta(const IntegrationParams& params, int n_traj);

// theta at the given times (each snapped to the step grid) for each of
// n_traj trajectories; row i holds trajectory i.  Streams paths, stores
// only the samples.
Eigen::ArrayXXd ensemble_theta_samples(const IntegrationParams& params, int n_traj,
                                       const std::vector<double>& sample_times);

// CSV dump, header: t,theta,phi,sigma,r,tau
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace qrho::sde
