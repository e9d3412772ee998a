#include <qrho/special/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qrho::special {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_k *= h;
    res_g *= h;
    return {res_k, std::fabs(res_k - res_g)};
}

struct Adaptive {
    const std::function<double(double)>* f;
    int max_depth;
    double value = 0.0;
    double err = 0.0;

    void run(double a, double b, double tol, int depth) {
        const PanelResult r = gk15(*f, a, b);
        if (r.err <= tol || depth >= max_depth) {
            value += r.kronrod;
            err += r.err;
            return;
        }
        const double m = 0.5 * (a + b);
        run(a, m, 0.5 * tol, depth + 1);
        run(m, b, 0.5 * tol, depth + 1);
    }
};

// Adaptive integration over a fixed initial panel decomposition.
IntegrationResult integrate_panels(const std::function<double(double)>& g,
                                   const std::vector<double>& edges,
                                   const QuadratureSpec& spec) {
    const int n = (int)edges.size() - 1;
    double rough = 0.0;
    for (int i = 0; i < n; ++i) rough += gk15(g, edges[i], edges[i + 1]).kronrod;

    double scale = std::fabs(rough);
    for (int pass = 0; pass < 2; ++pass) {
        const double tol_total =
            std::max(spec.relative_tolerance * scale, spec.absolute_floor);
        Adaptive ad{&g, spec.max_refinements};
        for (int i = 0; i < n; ++i)
            ad.run(edges[i], edges[i + 1], tol_total / n, 0);
        const double tol_final = std::max(
            spec.relative_tolerance * std::fabs(ad.value), spec.absolute_floor);
        if (ad.err <= tol_final) return {ad.value, ad.err};
        if (pass == 1)
            throw ConvergenceError(
                "integrate: error estimate " + std::to_string(ad.err) +
                    " above tolerance after max refinements",
                ad.value, ad.err);
        scale = std::fabs(ad.value);
    }
    return {};  // unreachable
}

IntegrationResult integrate_uniform(const std::function<double(double)>& g,
                                    double a, double b,
                                    const QuadratureSpec& spec) {
    constexpr int kInitialPanels = 16;
    std::vector<double> edges(kInitialPanels + 1);
    for (int i = 0; i <= kInitialPanels; ++i)
        edges[i] = a + (b - a) * i / kInitialPanels;
    return integrate_panels(g, edges, spec);
}

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f,
                            const Domain& domain, const QuadratureSpec& spec) {
    spec.validate();
    const double a = domain.a;
    if (domain.b) {
        const double b = *domain.b;
        if (!(a < b)) throw DomainError("integrate: domain must satisfy a < b");
        if (domain.sqrt_singularity_at_a) {
            const double umax = std::sqrt(b - a);
            auto g = [&f, a](double u) { return 2.0 * u * f(a + u * u); };
            return integrate_uniform(g, 0.0, umax, spec);
        }
        return integrate_uniform(f, a, b, spec);
    }
    const double s = domain.scale > 0.0 ? domain.scale : 1.0;
    if (domain.sqrt_singularity_at_a) {
        const double s2 = std::sqrt(s);
        auto g = [&f, a, s2](double u) {
            const double us = -s2 * std::log1p(-u);
            return 2.0 * us * f(a + us * us) * s2 / (1.0 - u);
        };
        return integrate_uniform(g, 0.0, 1.0, spec);
    }
    if (spec.semi_infinite_mapping == SemiInfiniteMapping::kExponentialSubstitution) {
        auto g = [&f, a, s](double u) {
            const double z = a - s * std::log1p(-u);
            return f(z) * s / (1.0 - u);
        };
        return integrate_uniform(g, 0.0, 1.0, spec);
    }
    auto g = [&f, a, s](double u) {
        const double z = a + s * u / (1.0 - u);
        return f(z) * s / ((1.0 - u) * (1.0 - u));
    };
    return integrate_uniform(g, 0.0, 1.0, spec);
}

namespace {

bool valid_ap_order(double p) {
    return p == -1.5 || p == -0.5 || p == 0.5 || p == 1.5;
}

// Largest z with g(z) - gmax >= -drop on the rising side, and the
// analogous point past the peak, for g(z) = -z^3/12 + q beta z.
double bisect_level(double lo, double hi, double level,
                    const std::function<double(double)>& g, bool rising) {
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        const bool above = g(m) >= level;
        if (above == rising)
            hi = m;
        else
            lo = m;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double a_p_log(double p, int q_sign, double beta,
               std::optional<double> cutoff, const QuadratureSpec& spec) {
    if (!valid_ap_order(p))
        throw DomainError("a_p_integral: p must be one of {-3/2,-1/2,1/2,3/2}");
    if (q_sign != 1 && q_sign != -1)
        throw DomainError("a_p_integral: q must be +1 or -1");
    if (!(beta >= 0.0)) throw DomainError("a_p_integral: beta must be >= 0");
    if (p == -1.5 && !cutoff)
        throw DomainError(
            "a_p_integral: p = -3/2 diverges at z = 0; an explicit positive "
            "lower cutoff is required");
    if (cutoff && !(*cutoff > 0.0))
        throw DomainError("a_p_integral: cutoff must be > 0");
    spec.validate();

    const double q = (double)q_sign;
    auto expo = [q, beta](double z) { return -z * z * z / 12.0 + q * beta * z; };
    const double z0 = (p == -1.5) ? *cutoff : 0.0;
    const double zpk = (q > 0.0) ? std::max(z0, 2.0 * std::sqrt(beta)) : z0;
    const double gmax = std::max(expo(z0), expo(zpk));

    // Window beyond which exp(g - gmax) underflows to an exact 0.
    constexpr double kDrop = 760.0;
    double zhi = zpk + 1.0;
    while (expo(zhi) - gmax > -kDrop) zhi *= 2.0;
    zhi = bisect_level(zpk, zhi, gmax - kDrop, expo, false);
    double zlo = z0;
    if (expo(z0) - gmax < -kDrop)
        zlo = bisect_level(z0, zpk, gmax - kDrop, expo, true);

    // Panel edges: geometric ladder from the small-z decay scale up to the
    // cutoff, plus a peak-centered cluster (Laplace width sqrt(2/zpk)).
    std::vector<double> edges{zlo};
    const double small_scale = 1.0 / std::max(1.0, beta);
    for (double v = std::max(zlo, 0.0) + 0.25 * std::min(small_scale, zhi); v < zhi;
         v *= 4.0)
        if (v > zlo) edges.push_back(v);
    if (q > 0.0 && zpk > zlo + 1e-12) {
        const double w = std::sqrt(2.0 / std::max(zpk, 1e-6));
        for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
            const double e = zpk + k * w;
            if (e > zlo && e < zhi) edges.push_back(e);
        }
    }
    for (double m : {0.25, 0.5, 0.75}) {
        const double e = zlo + (zhi - zlo) * m;
        if (e > zlo) edges.push_back(e);
    }
    edges.push_back(zhi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    IntegrationResult r;
    if (p == -1.5) {
        auto f = [&](double z) { return std::pow(z, -1.5) * std::exp(expo(z) - gmax); };
        r = integrate_panels(f, edges, spec);
    } else {
        // z = u^2: z^p dz -> 2 u^{2p+1} du, exact for the half-integer p.
        const int pow2 = (int)std::lround(2.0 * p + 1.0);
        std::vector<double> uedges(edges.size());
        for (size_t i = 0; i < edges.size(); ++i) uedges[i] = std::sqrt(edges[i]);
        auto f = [&](double u) {
            double w = 2.0;
            for (int i = 0; i < pow2; ++i) w *= u;
            return w * std::exp(expo(u * u) - gmax);
        };
        r = integrate_panels(f, uedges, spec);
    }
    if (!(r.value > 0.0))
        throw ConvergenceError("a_p_integral: non-positive quadrature value",
                               r.value, r.error_estimate);
    return gmax + std::log(r.value);
}

double a_p_integral(double p, int q_sign, double beta,
                    std::optional<double> cutoff, const QuadratureSpec& spec) {
    const double lg = a_p_log(p, q_sign, beta, cutoff, spec);
    if (lg > 708.0)
        throw RangeError("a_p_integral: value overflows double (ln = " +
                         std::to_string(lg) + "); use a_p_log");
    return std::exp(lg);
}

}  // namespace qrho::special
