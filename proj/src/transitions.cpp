#include <qrho/transitions/transitions.hpp>

#include <qrho/fp/stationary.hpp>
#include <qrho/special/detail/gk15.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qrho::transitions {

namespace {

// The averages run over the flux-standardized coordinate y = theta_bar /
// sqrt(lambda gamma) (unit-scale stationary shape); the coupling weights
// then carry the explicit 1/(lambda gamma), which is what makes the
// simplified form the exact lambda_plus -> inf limit of the two-sided one.
struct StandardDensity {
    double lambda;
    double gamma;
    double scale;  // sqrt(lambda gamma)

    double operator()(double y) const {
        return scale * fp::stationary_density(lambda, gamma, scale * y);
    }
};

double w_plus(double a) { return std::sqrt((a + 1.0) / (2.0 * a * a)); }
double w_minus(double a) { return std::sqrt((a - 1.0) / (2.0 * a * a)); }

// u-grid on (-pi/2, pi/2) for y = tan(u): uniform core plus geometric
// stacks toward the endpoints (the weights switch off at |y| ~ sqrt(x),
// which can sit arbitrarily close to the ends).
std::vector<double> tan_edges() {
    constexpr int kCore = 32;
    constexpr int kGeom = 44;
    std::vector<double> e;
    const double half = M_PI / 2.0;
    const double h0 = 2.0 * half / kCore;
    for (int i = 0; i <= kCore; ++i) e.push_back(-half + i * h0);
    double d = h0;
    for (int j = 0; j < kGeom; ++j) {
        d *= 0.5;
        e.push_back(-half + d);
        e.push_back(half - d);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

// Composite GK15 with per-panel bisection; tolerance is absolute on the
// whole integral (the I integrals are O(1) by construction).
template <typename F>
double integrate_u(const F& f, double tol) {
    static const std::vector<double> edges = tan_edges();
    auto f2 = [&](double u) { return special::detail::Pair2{f(u), 0.0}; };
    special::detail::Pair2 acc{};
    double err_acc = 0.0;
    const double per_panel = std::max(tol * 1e-3, 1e-14) / (double)(edges.size() - 1);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        special::detail::adapt_pair(f2, edges[i], edges[i + 1], per_panel, 0, acc,
                                    err_acc);
    return acc.a;
}

void check_rho(double rho) {
    if (!(rho >= 0.0) || rho >= 1.0)
        throw DomainError(
            "transitions: rho must lie in [0, 1); rho = 1 is total reflection");
}

}  // namespace

double gamma_of_rho(double rho) {
    check_rho(rho);
    const double s = std::sqrt(rho);
    const double r = (1.0 + s) / (1.0 - s);
    return r * r;
}

TransitionResult delta_00_simplified(double lambda, double rho, double tolerance) {
    if (!(lambda > 0.0)) throw DomainError("delta_00: lambda must be > 0");
    check_rho(rho);
    const double gamma = gamma_of_rho(rho);
    const double x = lambda * gamma;
    const StandardDensity q{lambda, gamma, std::sqrt(x)};

    auto I = [&](bool plus) {
        return integrate_u(
            [&](double u) {
                const double y = std::tan(u);
                const double jac = 1.0 + y * y;
                const double abar = std::sqrt(1.0 + y * y / x);
                const double w = plus ? w_plus(abar) : w_minus(abar);
                return q(y) * jac * w;
            },
            tolerance);
    };
    TransitionResult r;
    r.lambda = lambda;
    r.lambda_plus = std::numeric_limits<double>::infinity();
    r.rho = rho;
    r.gamma = gamma;
    r.i1 = I(true);
    r.i2 = I(false);
    r.delta = std::sqrt(1.0 - rho) * (r.i1 * r.i1 + r.i2 * r.i2);
    return r;
}

TransitionResult delta_00(double lambda, double lambda_plus, double rho,
                          double tolerance) {
    if (!(lambda > 0.0) || !(lambda_plus > 0.0))
        throw DomainError("delta_00: lambda and lambda_plus must be > 0");
    check_rho(rho);
    if (std::isinf(lambda_plus)) return delta_00_simplified(lambda, rho, tolerance);

    const double gamma = gamma_of_rho(rho);
    const double x = lambda * gamma;
    const StandardDensity q{lambda, gamma, std::sqrt(x)};
    const StandardDensity qp{lambda_plus, gamma, std::sqrt(lambda_plus * gamma)};
    const double mix = std::sqrt(lambda / lambda_plus);

    // Tabulate the out-channel density once on the fixed u grid; the inner
    // integral is then a weighted sum per outer node.
    static const std::vector<double> edges = tan_edges();
    struct Node {
        double y, qjac, wgt;
    };
    std::vector<Node> inner;
    {
        // 15-point Kronrod nodes/weights per panel, mapped from [-1, 1].
        static const double xg[15] = {
            -0.991455371120813, -0.949107912342759, -0.864864423359769,
            -0.741531185599394, -0.586087235467691, -0.405845151377397,
            -0.207784955007898, 0.0,                0.207784955007898,
            0.405845151377397,  0.586087235467691,  0.741531185599394,
            0.864864423359769,  0.949107912342759,  0.991455371120813};
        static const double wg[15] = {
            0.022935322010529, 0.063092092629979, 0.104790010322250,
            0.140653259715526, 0.169004726639267, 0.190350578064785,
            0.204432940075298, 0.209482141084728, 0.204432940075298,
            0.190350578064785, 0.169004726639267, 0.140653259715526,
            0.104790010322250, 0.063092092629979, 0.022935322010529};
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            const double c = 0.5 * (edges[i] + edges[i + 1]);
            const double h = 0.5 * (edges[i + 1] - edges[i]);
            for (int j = 0; j < 15; ++j) {
                const double u = c + h * xg[j];
                const double y = std::tan(u);
                inner.push_back({y, qp(y) * (1.0 + y * y), h * wg[j]});
            }
        }
    }

    auto I = [&](bool plus) {
        return integrate_u(
            [&](double u) {
                const double y = std::tan(u);
                const double jac = 1.0 + y * y;
                double s = 0.0;
                for (const Node& nd : inner) {
                    const double d = y - mix * nd.y;
                    const double a = std::sqrt(1.0 + d * d / x);
                    s += nd.qjac * nd.wgt * (plus ? w_plus(a) : w_minus(a));
                }
                return q(y) * jac * s;
            },
            tolerance);
    };

    TransitionResult r;
    r.lambda = lambda;
    r.lambda_plus = lambda_plus;
    r.rho = rho;
    r.gamma = gamma;
    r.i1 = I(true);
    r.i2 = I(false);
    r.delta = std::sqrt(1.0 - rho) * (r.i1 * r.i1 + r.i2 * r.i2);
    return r;
}

}  // namespace qrho::transitions
