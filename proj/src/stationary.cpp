#include <qrho/fp/stationary.hpp>

#include <qrho/special/airy.hpp>
#include <qrho/special/detail/gk15.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrho::fp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPiSq = kPi * kPi;

// Folded-form exponent g(y) = -(x + tb^2) y + tb y^2 - y^3/3, x = lambda gamma.
// g'(y) = -x - (y - tb)^2, so the interior maximum (x < 0 only) sits at
// y = tb + sqrt(-x).
struct FoldedIntegrand {
    double x;
    double tb;

    double g(double y) const {
        return -(x + tb * tb) * y + tb * y * y - y * y * y / 3.0;
    }
    double peak() const {
        if (x >= 0.0) return 0.0;
        return std::max(0.0, tb + std::sqrt(-x));
    }
};

// int_0^inf e^{g - gmax} dy and the first two theta_bar moments of the
// integrand needed for the log-derivative.
struct FoldedResult {
    double gmax;
    double base;    // int e^{g-gmax}
    double dtheta;  // int (-2 tb y + y^2) e^{g-gmax}
};

FoldedResult folded_integrals(double x, double tb, bool want_deriv = true) {
    const FoldedIntegrand fi{x, tb};
    const double ypk = fi.peak();
    const double gmax = std::max(fi.g(0.0), fi.g(ypk));

    // Integration window: beyond yhi the shifted integrand is an exact 0.
    constexpr double kDrop = 745.0;
    double yhi = std::max(1.0, ypk + 1.0);
    while (fi.g(yhi) - gmax > -kDrop) yhi *= 2.0;

    // Panel edges: geometric ladder from the y = 0 boundary layer (decay
    // scale 1/(x + tb^2) when that is large) up to the cutoff, plus a
    // cluster around the interior peak.
    std::vector<double> edges{0.0};
    const double bl = 1.0 / std::max(1.0, std::fabs(x + tb * tb));
    for (double v = 0.25 * std::min(bl, yhi); v < yhi; v *= 4.0) edges.push_back(v);
    if (ypk > 0.0) {
        const double w = 1.0 / std::sqrt(std::max(std::sqrt(-x), 1e-3));
        for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
            const double e = ypk + k * w;
            if (e > 0.0 && e < yhi) edges.push_back(e);
        }
    }
    for (double m : {0.25, 0.5, 0.75}) edges.push_back(yhi * m);
    edges.push_back(yhi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Both integrals share one exponential per node.
    auto f2 = [&](double y) {
        const double e = std::exp(fi.g(y) - gmax);
        return special::detail::Pair2{e, (-2.0 * tb * y + y * y) * e};
    };
    (void)want_deriv;

    // Rough scale pass, then adaptive refinement against it.
    special::detail::Pair2 rough{};
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double err;
        rough += special::detail::gk15_pair(f2, edges[i], edges[i + 1], err);
    }
    const double tol = std::max(1e-11 * std::fabs(rough.a), 1e-300);
    special::detail::Pair2 acc{};
    double err_acc = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        special::detail::adapt_pair(f2, edges[i], edges[i + 1],
                                    tol / (double)(edges.size() - 1), 0, acc, err_acc);

    FoldedResult r;
    r.gmax = gmax;
    r.base = acc.a;
    r.dtheta = acc.b;
    return r;
}

void check_finite(double v, const char* who) {
    if (!std::isfinite(v)) throw DomainError(std::string(who) + ": argument must be finite");
}

}  // namespace

double flux_scaled(double x) {
    check_finite(x, "flux_scaled");
    return std::exp(ln_flux_scaled(x));
}

double ln_flux_scaled(double x) {
    check_finite(x, "ln_flux_scaled");
    return -2.0 * std::log(kPi) - special::ln_airy_modulus_sq(-x);
}

double flux_scaled_quadrature(double x, const special::QuadratureSpec& spec) {
    check_finite(x, "flux_scaled_quadrature");
    // J0f^{-1} = sqrt(pi) A_{-1/2}(-x z): q = -sign(x).
    const int q = x > 0.0 ? -1 : 1;
    const double lg = special::a_p_log(-0.5, q, std::fabs(x), std::nullopt, spec);
    return std::exp(-0.5 * std::log(kPi) - lg);
}

double ln_stationary_density(double lambda, double gamma, double theta_bar) {
    check_finite(theta_bar, "stationary_density");
    check_finite(lambda, "stationary_density");
    check_finite(gamma, "stationary_density");
    const double x = lambda * gamma;
    const FoldedResult fr = folded_integrals(x, theta_bar, /*want_deriv=*/false);
    return ln_flux_scaled(x) + fr.gmax + std::log(fr.base);
}

double stationary_density(double lambda, double gamma, double theta_bar) {
    return std::exp(ln_stationary_density(lambda, gamma, theta_bar));
}

double stationary_density_log_deriv(double lambda, double gamma, double theta_bar) {
    const double x = lambda * gamma;
    const FoldedResult fr = folded_integrals(x, theta_bar);
    return fr.dtheta / fr.base;
}

double flux_residual_scaled(double lambda, double gamma, double theta_bar) {
    const double x = lambda * gamma;
    const FoldedResult fr = folded_integrals(x, theta_bar);
    // Qs / J0f and d(ln Qs)/d tb from one pass; the flux equation reads
    // (tb^2 + x) Qs + Qs' = J0f.
    const double q_over_j = std::exp(fr.gmax) * fr.base;
    const double dln = fr.dtheta / fr.base;
    return (theta_bar * theta_bar + x + dln) * q_over_j - 1.0;
}

StationaryDist make_stationary_dist(double lambda, double gamma,
                                    const Eigen::ArrayXd& theta_bar_grid) {
    StationaryDist d;
    d.lambda = lambda;
    d.gamma = gamma;
    d.j0f_scaled = flux_scaled(lambda * gamma);
    d.theta_bar = theta_bar_grid;
    d.q_s.resize(theta_bar_grid.size());
    for (Eigen::Index i = 0; i < theta_bar_grid.size(); ++i)
        d.q_s[i] = stationary_density(lambda, gamma, theta_bar_grid[i]);
    return d;
}

namespace {

void check_spectral_args(double e, double epsilon, const char* who) {
    if (!(e > 0.0)) throw DomainError(std::string(who) + ": E must be > 0");
    if (!(epsilon > 0.0)) throw DomainError(std::string(who) + ": epsilon must be > 0");
}

}  // namespace

double n_sigma(double e, double epsilon) {
    check_spectral_args(e, epsilon, "n_sigma");
    const double ebar = e / std::pow(epsilon, 2.0 / 3.0);
    return std::cbrt(epsilon) * flux_scaled(ebar);
}

double n_e(double e, double epsilon) {
    check_spectral_args(e, epsilon, "n_e");
    const double ebar = e / std::pow(epsilon, 2.0 / 3.0);
    return std::cbrt(epsilon) *
           std::exp(-2.0 * std::log(kPi) - special::ln_airy_modulus_sq(ebar));
}

double p_e(double e, double epsilon) {
    check_spectral_args(e, epsilon, "p_e");
    const double ebar = e / std::pow(epsilon, 2.0 / 3.0);
    return std::exp(special::ln_airy_modulus_sq(-ebar) -
                    special::ln_airy_modulus_sq(ebar));
}

KernelValue transition_kernel(double theta, double phi, double theta_prev,
                              double phi_prev, double dt, double epsilon, double u0) {
    if (!(dt > 0.0)) throw DomainError("transition_kernel: dt must be > 0");
    if (!(epsilon > 0.0)) throw DomainError("transition_kernel: epsilon must be > 0");
    (void)phi;
    const double drift = theta_prev * theta_prev - phi_prev * phi_prev + u0;
    const double mean = theta_prev - drift * dt;
    const double var = 2.0 * epsilon * dt;
    const double d = theta - mean;
    KernelValue kv;
    kv.theta_density = std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
    kv.phi_next = phi_prev - 2.0 * theta_prev * phi_prev * dt;
    return kv;
}

}  // namespace qrho::fp
