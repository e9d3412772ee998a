#include <qrho/wavefunc/psi.hpp>

#include <qrho/special/hermite.hpp>

#include <cmath>
#include <string>

namespace qrho::wavefunc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_level(int n, const char* who) {
    if (n < 0) throw DomainError(std::string(who) + ": level must be >= 0");
    if (n > kLevelMax)
        throw CapabilityError(std::string(who) + ": level exceeds bound " +
                              std::to_string(kLevelMax));
}

// Pairwise (tree) reduction over [lo, hi) -- summation order is fixed by
// the recursion, not by any worker schedule.
template <typename T, typename F>
T pairwise_sum(Eigen::Index lo, Eigen::Index hi, const F& term) {
    if (hi - lo == 1) return term(lo);
    const Eigen::Index mid = lo + (hi - lo) / 2;
    return pairwise_sum<T>(lo, mid, term) + pairwise_sum<T>(mid, hi, term);
}

}  // namespace

std::complex<double> psi_in(int n, double x, double t, double omega_in) {
    check_level(n, "psi_in");
    if (!(omega_in > 0.0)) throw DomainError("psi_in: omega_in must be > 0");
    const double norm = std::sqrt(std::sqrt(omega_in / kPi) /
                                  (std::ldexp(1.0, n) * special::factorial(n)));
    const double phase = -(n + 0.5) * omega_in * t;
    const double gauss = -0.5 * omega_in * x * x;
    return norm * special::hermite(n, std::sqrt(omega_in) * x) *
           std::exp(gauss) * std::polar(1.0, phase);
}

std::complex<double> psi_stc(int n, double x, const FrameState& f) {
    check_level(n, "psi_stc");
    f.validate();
    const double norm = std::sqrt(std::sqrt(f.omega_in / kPi) /
                                  (std::ldexp(1.0, n) * special::factorial(n) * f.sigma));
    const double phase = -(n + 0.5) * f.omega_in * f.tau +
                         0.5 * (f.sigma_t / f.sigma) * x * x;
    const double gauss = -0.5 * f.r_t * x * x;
    return norm * special::hermite(n, std::sqrt(f.omega_in) * x / f.sigma) *
           std::exp(gauss) * std::polar(1.0, phase);
}

namespace {

double grid_norm(const Eigen::ArrayXd& x_grid, const Eigen::ArrayXcd& f) {
    double nrm2 = 0.0;
    for (Eigen::Index ix = 0; ix + 1 < x_grid.size(); ++ix) {
        const double h = x_grid[ix + 1] - x_grid[ix];
        nrm2 += 0.5 * h * (std::norm(f[ix]) + std::norm(f[ix + 1]));
    }
    return std::sqrt(nrm2);
}

}  // namespace

PsiAverage psi_br(int n, const Eigen::ArrayXd& x_grid,
                  const std::vector<sde::Trajectory>& ensemble, double t) {
    check_level(n, "psi_br");
    if (ensemble.empty()) throw DomainError("psi_br: ensemble must be nonempty");
    if (x_grid.size() < 2) throw DomainError("psi_br: need at least two grid points");

    const Eigen::Index ntraj = (Eigen::Index)ensemble.size();
    const Eigen::Index nx = x_grid.size();

    // Per-trajectory frames at t (node_at validates the time range).
    std::vector<FrameState> frames;
    frames.reserve((size_t)ntraj);
    for (const auto& tr : ensemble)
        frames.push_back(FrameState::from_trajectory(tr, tr.node_at(t)));

    // Per-trajectory values; grid x trajectory layout.
    Eigen::MatrixXcd vals(nx, ntraj);
    for (Eigen::Index i = 0; i < ntraj; ++i)
        for (Eigen::Index ix = 0; ix < nx; ++ix)
            vals(ix, i) = psi_stc(n, x_grid[ix], frames[(size_t)i]);

    PsiAverage out;
    out.psi.resize(nx);
    out.std_error.resize(nx);
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        auto term = [&](Eigen::Index i) { return vals(ix, i); };
        const std::complex<double> mean =
            pairwise_sum<std::complex<double>>(0, ntraj, term) / (double)ntraj;
        out.psi[ix] = mean;
        if (ntraj > 1) {
            auto dev2 = [&](Eigen::Index i) { return std::norm(vals(ix, i) - mean); };
            const double var = pairwise_sum<double>(0, ntraj, dev2) /
                               ((double)ntraj * (double)(ntraj - 1));
            out.std_error[ix] = std::sqrt(var);
        } else {
            out.std_error[ix] = 0.0;
        }
    }

    // Empirical alpha: norm of the mean over the mean of the norms, both
    // on the same grid, so a noiseless ensemble gives alpha = 1 exactly.
    auto norm_i = [&](Eigen::Index i) { return grid_norm(x_grid, vals.col(i).array()); };
    const double mean_norm = pairwise_sum<double>(0, ntraj, norm_i) / (double)ntraj;
    const double norm_mean = grid_norm(x_grid, out.psi);
    out.alpha = mean_norm > 0.0 ? norm_mean / mean_norm : 1.0;
    if (out.alpha > 0.0) out.psi /= out.alpha;
    return out;
}

}  // namespace qrho::wavefunc
