#include <qrho/sde/trajectory.hpp>

#include <qrho/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>

namespace qrho::sde {

namespace {

constexpr double kPhiFloor = 1e-300;

// Stepping core shared by all drivers.  Observer is called as
// observe(k, t, theta, log_sigma, tau) at every node including k = 0.
template <typename Observer>
void run_steps(const IntegrationParams& p, std::vector<Reinjection>* events,
               Observer&& observe) {
    const double dt = p.dt;
    const double omega_in = p.profile.omega_in;
    const double theta_cap = p.effective_theta_max();
    const long n = (long)std::llround((p.t1 - p.t0) / dt);

    // Hoist the frequency law: only the smooth profile varies past t_c.
    const bool smooth = p.profile.kind == FrequencyProfile::Kind::kSmoothTanh;
    const double u0_pre = omega_in * omega_in;
    const double u0_post = p.profile.u0(p.profile.t_c);
    // First step index at or past t_c.
    long k_c = (long)std::ceil((p.profile.t_c - p.t0) / dt - 1e-9);
    if (k_c < 0) k_c = 0;

    double theta = 0.0;
    double log_sigma = 0.0;    // int theta dt
    double tau = 0.0;          // int dt / sigma^2
    double inv_sigma2 = 1.0;   // exp(-2 log_sigma), tracked incrementally
    observe(0L, p.t0, theta, log_sigma, tau);

    const bool noisy = p.noise.epsilon > 0.0;
    const double amp = noisy ? std::sqrt(2.0 * p.noise.epsilon * dt) : 0.0;
    detail::NormalStream normals{p.noise.stream_id, p.noise.seed};

    // Once log_sigma > kPhiDead, phi^2 is below 1e-26 of any drift scale
    // and the per-step exponential is skipped; the regime test depends only
    // on log_sigma, so results stay schedule-independent.
    constexpr double kPhiDead = 30.0;

    for (long k = 0; k < n; ++k) {
        const double t = p.t0 + k * dt;
        const bool post = k >= k_c;
        const double u0 = smooth ? p.profile.u0(t) : (post ? u0_post : u0_pre);
        const bool dead = log_sigma > kPhiDead;
        const double phi = dead ? 0.0 : omega_in * inv_sigma2;
        const double drift = -(theta * theta - phi * phi + u0);
        // Steps are unsafe once they move the state by more than a fraction
        // of its own magnitude; relaxation from large |Phi| is stable, so
        // the fraction can sit close to 1.
        if (std::fabs(drift) * dt > std::max(0.5, 0.8 * (std::fabs(theta) + phi)))
            throw StabilityError(
                "integrate_phase: step too coarse at t = " + std::to_string(t) +
                " (|drift| dt = " + std::to_string(std::fabs(drift) * dt) +
                "); use a smaller dt");
        double w = 0.0;
        if (noisy && post) w = amp * normals((std::uint64_t)k);
        double theta_next = theta + drift * dt - w;
        const double t_next = p.t0 + (k + 1) * dt;
        // Trapezoidal frame accumulation with the pre-reinjection value;
        // the skipped dive to -inf and return from +inf cancel in int theta.
        const double dS = 0.5 * (theta + theta_next) * dt;
        log_sigma += dS;
        if (!dead || log_sigma <= kPhiDead) {
            const double inv_next =
                (log_sigma > 0.5 * kPhiDead) ? std::exp(-2.0 * log_sigma)
                                             : inv_sigma2 * std::exp(-2.0 * dS);
            tau += 0.5 * dt * (inv_sigma2 + inv_next);
            inv_sigma2 = inv_next;
        }
        if (theta_next <= -theta_cap) {
            if (events) events->push_back({t_next, -1});
            theta_next = theta_cap;
        }
        theta = theta_next;
        observe(k + 1, t_next, theta, log_sigma, tau);
    }
}

}  // namespace

void IntegrationParams::validate() const {
    profile.validate();
    noise.validate();
    if (!(t0 < t1)) throw DomainError("integrate_phase: requires t0 < t1");
    if (!(dt > 0.0)) throw DomainError("integrate_phase: dt must be > 0");
    if (dt * profile.u0_max() >= 0.1)
        throw DomainError("integrate_phase: dt too large (dt * max U0 must be < 0.1)");
    if (!(effective_theta_max() > 0.0))
        throw DomainError("integrate_phase: theta_max must be > 0");
    if (store_every < 1) throw DomainError("integrate_phase: store_every must be >= 1");
}

Eigen::Index Trajectory::node_at(double t) const {
    if (size() == 0) throw DomainError("Trajectory: empty");
    const double t0 = time_grid[0];
    const double tn = time_grid[size() - 1];
    if (t < t0 - 1e-12 || t > tn + 1e-12)
        throw DomainError("Trajectory: time outside stored range");
    const double step = size() > 1 ? time_grid[1] - time_grid[0] : 1.0;
    Eigen::Index i = (Eigen::Index)std::llround((t - t0) / step);
    return std::min(std::max(i, Eigen::Index{0}), size() - 1);
}

Trajectory integrate_phase(const IntegrationParams& params) {
    params.validate();
    const long n = (long)std::llround((params.t1 - params.t0) / params.dt);
    if (n < 1) throw DomainError("integrate_phase: grid has no steps");
    const long stride = params.store_every;
    const long stored = n / stride + 1;

    Trajectory tr;
    tr.omega_in = params.profile.omega_in;
    tr.dt = params.dt;
    tr.time_grid.resize(stored);
    tr.theta.resize(stored);
    tr.phi.resize(stored);
    tr.sigma.resize(stored);
    tr.r.resize(stored);
    tr.tau.resize(stored);
    tr.lambda_frame.resize(stored);

    const double omega_in = params.profile.omega_in;
    run_steps(params, &tr.reinjections,
              [&](long k, double t, double theta, double log_sigma, double tau) {
                  if (k % stride != 0) return;
                  const long i = k / stride;
                  if (i >= stored) return;
                  const double sigma = std::exp(log_sigma);
                  tr.time_grid[i] = t;
                  tr.theta[i] = theta;
                  tr.phi[i] = std::max(omega_in * std::exp(-2.0 * log_sigma), kPhiFloor);
                  tr.sigma[i] = sigma;
                  tr.tau[i] = tau;
                  tr.r[i] = omega_in * tau;
                  tr.lambda_frame[i] = theta * sigma * sigma;
              });
    return tr;
}

std::vector<Trajectory> ensemble(const IntegrationParams& params, int n_traj) {
    if (n_traj < 1) throw DomainError("ensemble: n_traj must be >= 1");
    params.validate();
    std::vector<Trajectory> out((size_t)n_traj);
    std::atomic<bool> failed{false};
    std::string message;
    parallel_for(n_traj, [&](long i) {
        if (failed.load(std::memory_order_relaxed)) return;
        IntegrationParams p = params;
        p.noise.stream_id = (std::uint64_t)i;
        try {
            out[(size_t)i] = integrate_phase(p);
        } catch (const Error& e) {
            if (!failed.exchange(true))
                message = "stream " + std::to_string(i) + ": " + e.what();
        }
    });
    if (failed) throw StabilityError("ensemble: " + message);
    return out;
}

Eigen::ArrayXXd ensemble_theta_samples(const IntegrationParams& params, int n_traj,
                                       const std::vector<double>& sample_times) {
    if (n_traj < 1) throw DomainError("ensemble: n_traj must be >= 1");
    if (sample_times.empty()) throw DomainError("ensemble: no sample times given");
    params.validate();
    const long n = (long)std::llround((params.t1 - params.t0) / params.dt);
    std::vector<long> nodes;
    nodes.reserve(sample_times.size());
    for (double t : sample_times) {
        const long k = (long)std::llround((t - params.t0) / params.dt);
        if (k < 0 || k > n)
            throw DomainError("ensemble: sample time outside the integration window");
        nodes.push_back(k);
    }
    std::sort(nodes.begin(), nodes.end());

    Eigen::ArrayXXd out(n_traj, (Eigen::Index)nodes.size());
    std::atomic<bool> failed{false};
    std::string message;
    parallel_for(n_traj, [&](long i) {
        if (failed.load(std::memory_order_relaxed)) return;
        IntegrationParams p = params;
        p.noise.stream_id = (std::uint64_t)i;
        size_t next = 0;
        try {
            run_steps(p, nullptr, [&](long k, double, double theta, double, double) {
                while (next < nodes.size() && k == nodes[next]) {
                    out(i, (Eigen::Index)next) = theta;
                    ++next;
                }
            });
        } catch (const Error& e) {
            if (!failed.exchange(true))
                message = "stream " + std::to_string(i) + ": " + e.what();
        }
    });
    if (failed) throw StabilityError("ensemble: " + message);
    return out;
}

Eigen::ArrayXd ensemble_final_theta(const IntegrationParams& params, int n_traj) {
    if (n_traj < 1) throw DomainError("ensemble: n_traj must be >= 1");
    params.validate();
    Eigen::ArrayXd out(n_traj);
    std::atomic<bool> failed{false};
    std::string message;
    parallel_for(n_traj, [&](long i) {
        if (failed.load(std::memory_order_relaxed)) return;
        IntegrationParams p = params;
        p.noise.stream_id = (std::uint64_t)i;
        double last = 0.0;
        try {
            run_steps(p, nullptr,
                      [&](long, double, double theta, double, double) { last = theta; });
        } catch (const Error& e) {
            if (!failed.exchange(true))
                message = "stream " + std::to_string(i) + ": " + e.what();
            return;
        }
        out[i] = last;
    });
    if (failed) throw StabilityError("ensemble: " + message);
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("write_trajectory_csv: cannot open " + path);
    std::fprintf(f, "t,theta,phi,sigma,r,tau\n");
    for (Eigen::Index i = 0; i < traj.size(); ++i)
        std::fprintf(f, "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", traj.time_grid[i],
                     traj.theta[i], traj.phi[i], traj.sigma[i], traj.r[i], traj.tau[i]);
    std::fclose(f);
}

}  // namespace qrho::sde
