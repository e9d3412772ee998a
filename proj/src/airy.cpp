#include <qrho/special/airy.hpp>

#include <cmath>
#include <array>
#include <limits>
#include <string>

namespace qrho::special {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Ai(0), Bi(0) and derivatives: 3^{-2/3}/Gamma(2/3) etc.
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679841;
constexpr double kBi0 = 0.61492662744600073515;
constexpr double kBip0 = 0.44828835735382635789;
constexpr double kSqrt3 = 1.73205080756887729353;

// Crossovers between evaluation branches.
constexpr double kSeriesPosMax = 4.5;    // Maclaurin upper end, x > 0
constexpr double kSeriesNegMin = -7.25;  // Maclaurin lower end, x < 0
constexpr double kAsymPosMin = 7.5;      // one-sided asymptotics start
constexpr double kMarchAnchor = 8.0;     // ODE march anchor for (4.5, 7.5]

struct Quad {
    double ai, aip, bi, bip;
};

// Maclaurin series of the two standard solutions
//   f = 1 + x^3/6 + ...,  g = x + x^4/12 + ...
// accumulated in long double; Ai = Ai(0) f + Ai'(0) g, similarly Bi.
Quad maclaurin(double x) {
    const long double xl = x;
    const long double x3 = xl * xl * xl;
    long double tf = 1.0L, tg = xl;  // current terms of f, g
    long double f = tf, g = tg;
    long double fp = 0.0L, gp = 1.0L;  // f' and g' accumulators
    for (int k = 0; k < 160; ++k) {
        const long double tf1 = tf * x3 / ((3 * k + 2) * (3 * k + 3));
        const long double tg1 = tg * x3 / ((3 * k + 3) * (3 * k + 4));
        f += tf1;
        g += tg1;
        // d/dx of the k+1 terms: exponents 3k+3 and 3k+4.
        if (x != 0.0) {
            fp += tf1 * (3 * k + 3) / xl;
            gp += tg1 * (3 * k + 4) / xl;
        }
        tf = tf1;
        tg = tg1;
        if (std::fabs((double)tf1) < 1e-24L * std::fabs((double)f) &&
            std::fabs((double)tg1) < 1e-24L * (std::fabs((double)g) + 1e-300))
            break;
    }
    Quad q;
    q.ai = (double)(kAi0 * f + kAip0 * g);
    q.aip = (double)(kAi0 * fp + kAip0 * gp);
    q.bi = kSqrt3 * (double)(kAi0 * f - kAip0 * g);
    q.bip = kSqrt3 * (double)(kAi0 * fp - kAip0 * gp);
    return q;
}

// Coefficients u_k, v_k of the large-|x| expansions (A&S 10.4.59-10.4.66).
struct AsymCoeffs {
    std::array<double, 40> u, v;
};
const AsymCoeffs& asym_coeffs() {
    static const AsymCoeffs c = [] {
        AsymCoeffs a;
        a.u[0] = 1.0;
        a.v[0] = 1.0;
        for (int k = 0; k + 1 < (int)a.u.size(); ++k) {
            const double num = (6.0 * k + 1) * (6.0 * k + 3) * (6.0 * k + 5);
            const double den = 216.0 * (k + 1) * (2 * k + 1);
            a.u[k + 1] = a.u[k] * num / den;
            a.v[k + 1] = -a.u[k + 1] * (6.0 * (k + 1) + 1) / (6.0 * (k + 1) - 1);
        }
        return a;
    }();
    return c;
}

// Sums an asymptotic series sum_k c_k q^k, truncating at the smallest term.
double asym_sum(const std::array<double, 40>& c, double q) {
    double s = c[0];
    double prev = std::fabs(c[0]);
    double pw = 1.0;
    for (int k = 1; k < (int)c.size(); ++k) {
        pw *= q;
        const double term = c[k] * pw;
        const double a = std::fabs(term);
        if (a > prev) break;  // divergence onset
        s += term;
        prev = a;
        if (a < 1e-18 * std::fabs(s)) break;
    }
    return s;
}

// One-sided expansions for x >= kAsymPosMin.
Quad asym_positive(double x) {
    const auto& c = asym_coeffs();
    const double sq = std::sqrt(x);
    const double zeta = 2.0 / 3.0 * x * sq;
    const double x14 = std::sqrt(sq);
    const double sa = asym_sum(c.u, -1.0 / zeta);
    const double sb = asym_sum(c.u, 1.0 / zeta);
    const double sap = asym_sum(c.v, -1.0 / zeta);
    const double sbp = asym_sum(c.v, 1.0 / zeta);
    const double em = std::exp(-zeta);
    const double ep = std::exp(zeta);  // may overflow to inf near the guard
    Quad q;
    q.ai = em * sa / (2.0 * std::sqrt(kPi) * x14);
    q.aip = -em * x14 * sap / (2.0 * std::sqrt(kPi));
    q.bi = ep * sb / (std::sqrt(kPi) * x14);
    q.bip = ep * x14 * sbp / std::sqrt(kPi);
    return q;
}

// Even/odd splits of the oscillatory expansion, x = -z with z > 0:
//   P = sum (-1)^k u_{2k} zeta^{-2k},   Q = sum (-1)^k u_{2k+1} zeta^{-2k-1}
// and R, S likewise from v.  All four are phase-free.
struct PQRS {
    double p, q, r, s;
};
PQRS oscillatory_series(double z) {
    const auto& c = asym_coeffs();
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double w = 1.0 / (zeta * zeta);
    PQRS o{0, 0, 0, 0};
    double pw = 1.0;  // zeta^{-2k}
    double prev = std::numeric_limits<double>::max();
    for (int k = 0; 2 * k + 1 < (int)c.u.size(); ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        const double tp = sgn * c.u[2 * k] * pw;
        if (std::fabs(tp) > prev) break;
        prev = std::fabs(tp);
        o.p += tp;
        o.q += sgn * c.u[2 * k + 1] * pw / zeta;
        o.r += sgn * c.v[2 * k] * pw;
        o.s += sgn * c.v[2 * k + 1] * pw / zeta;
        pw *= w;
        if (std::fabs(tp) < 1e-18) break;
    }
    return o;
}

Quad asym_negative(double x) {
    const double z = -x;
    const double sq = std::sqrt(z);
    const double zeta = 2.0 / 3.0 * z * sq;
    const double z14 = std::sqrt(sq);
    const PQRS o = oscillatory_series(z);
    const double th = zeta + 0.25 * kPi;
    const double sn = std::sin(th), cs = std::cos(th);
    const double pref = 1.0 / (std::sqrt(kPi) * z14);
    Quad q;
    q.ai = pref * (sn * o.p - cs * o.q);
    q.bi = pref * (cs * o.p + sn * o.q);
    q.aip = -(z14 / std::sqrt(kPi)) * (cs * o.r + sn * o.s);
    q.bip = (z14 / std::sqrt(kPi)) * (sn * o.r - cs * o.s);
    return q;
}

// Taylor step for y'' = x y: advance (y, y') from x0 by h.
void taylor_step(double x0, double h, double& y, double& yp) {
    constexpr int kOrder = 26;
    double a[kOrder + 2];
    a[0] = y;
    a[1] = yp;
    for (int k = 0; k + 2 <= kOrder + 1; ++k) {
        const double am1 = (k >= 1) ? a[k - 1] : 0.0;
        a[k + 2] = (x0 * a[k] + am1) / ((k + 1) * (k + 2));
    }
    double v = 0.0, vp = 0.0;
    for (int k = kOrder + 1; k >= 1; --k) {
        v = (v + a[k]) * h;
        vp = (vp + k * a[k]) * h;
    }
    y = v + a[0];
    yp = vp / h;
}

// Ai on (kSeriesPosMax, kAsymPosMin): anchored at kMarchAnchor by the
// one-sided expansion, then marched downward.  Downward integration damps
// any Bi admixture, so the relative accuracy of the anchor is preserved.
void ai_march(double x, double& ai, double& aip) {
    Quad a = asym_positive(kMarchAnchor);
    double y = a.ai, yp = a.aip;
    double pos = kMarchAnchor;
    while (pos > x + 1e-12) {
        const double h = std::max(-0.5, x - pos);
        taylor_step(pos, h, y, yp);
        pos += h;
    }
    ai = y;
    aip = yp;
}

Quad airy_quad(double x) {
    if (x <= kSeriesNegMin) return asym_negative(x);
    if (x <= kSeriesPosMax) return maclaurin(x);
    if (x < kAsymPosMin) {
        Quad q = maclaurin(x);  // Bi side has no cancellation for x > 0
        ai_march(x, q.ai, q.aip);
        return q;
    }
    return asym_positive(x);
}

}  // namespace

AiryValues airy(double x) {
    if (!std::isfinite(x)) throw DomainError("airy: argument must be finite");
    if (std::fabs(x) > kAiryArgMax)
        throw RangeError("airy: |x| exceeds overflow bound " +
                         std::to_string(kAiryArgMax));
    const Quad q = airy_quad(x);
    AiryValues v;
    v.x = x;
    v.ai = q.ai;
    v.ai_prime = q.aip;
    v.bi = q.bi;
    v.bi_prime = q.bip;
    if (x > 60.0) {
        // Bi dominates; square through its log to delay overflow.
        const double r = q.ai / q.bi;
        v.modulus_sq = std::exp(2.0 * std::log(q.bi)) * (1.0 + r * r);
    } else {
        v.modulus_sq = q.ai * q.ai + q.bi * q.bi;
    }
    return v;
}

double airy_modulus_sq(double x) {
    if (!std::isfinite(x)) throw DomainError("airy_modulus_sq: argument must be finite");
    if (x > kAiryArgMax)
        throw RangeError("airy_modulus_sq: x exceeds overflow bound " +
                         std::to_string(kAiryArgMax));
    if (x <= kSeriesNegMin) {
        const double z = -x;
        const PQRS o = oscillatory_series(z);
        return (o.p * o.p + o.q * o.q) / (kPi * std::sqrt(z));
    }
    return airy(x).modulus_sq;
}

double ln_airy_modulus_sq(double x) {
    if (!std::isfinite(x)) throw DomainError("ln_airy_modulus_sq: argument must be finite");
    if (x <= kSeriesNegMin) {
        const double z = -x;
        const PQRS o = oscillatory_series(z);
        return std::log(o.p * o.p + o.q * o.q) - std::log(kPi) - 0.5 * std::log(z);
    }
    if (x < kAsymPosMin) {
        const Quad q = airy_quad(x);
        return std::log(q.ai * q.ai + q.bi * q.bi);
    }
    // Bi^2 dominates: ln A = 2 ln Bi + log1p((Ai/Bi)^2).
    const auto& c = asym_coeffs();
    const double sq = std::sqrt(x);
    const double zeta = 2.0 / 3.0 * x * sq;
    const double sb = asym_sum(c.u, 1.0 / zeta);
    const double sa = asym_sum(c.u, -1.0 / zeta);
    const double ln_bi = zeta + std::log(sb) - 0.5 * std::log(kPi) - 0.25 * std::log(x);
    const double r = std::exp(-2.0 * zeta) * sa / (2.0 * sb);
    return 2.0 * ln_bi + std::log1p(r * r);
}

namespace detail {

ModulusDerivs modulus_derivs(double x) {
    if (x > kSeriesNegMin) {
        const AiryValues v = airy(x);
        const double a = v.modulus_sq;
        const double ap = 2.0 * (v.ai * v.ai_prime + v.bi * v.bi_prime);
        const double app =
            2.0 * (v.ai_prime * v.ai_prime + v.bi_prime * v.bi_prime + x * a);
        return {a, ap / a, app / a};
    }
    // x deep negative: modulus envelope from the phase-free series.
    const double z = -x;
    const auto& c = asym_coeffs();
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double w = 1.0 / (zeta * zeta);
    // P,Q,R,S plus the difference series R-P, S-Q (no cancellation:
    // v_k - u_k = -u_k * 12k/(6k-1)).
    double P = 0, Q = 0, R = 0, S = 0, RmP = 0, SmQ = 0;
    double pw = 1.0;
    for (int k = 0; 2 * k + 1 < (int)c.u.size(); ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        const double u2k = c.u[2 * k], u2k1 = c.u[2 * k + 1];
        P += sgn * u2k * pw;
        Q += sgn * u2k1 * pw / zeta;
        R += sgn * c.v[2 * k] * pw;
        S += sgn * c.v[2 * k + 1] * pw / zeta;
        const double dv2k = (k == 0) ? 0.0 : -u2k * (12.0 * 2 * k) / (6.0 * 2 * k - 1);
        const double dv2k1 = -u2k1 * (12.0 * (2 * k + 1)) / (6.0 * (2 * k + 1) - 1);
        RmP += sgn * dv2k * pw;
        SmQ += sgn * dv2k1 * pw / zeta;
        pw *= w;
        if (std::fabs(u2k * pw) < 1e-19) break;
    }
    const double m2 = P * P + Q * Q;               // pi sqrt(z) A
    const double cross = Q * R - P * S;            // pi A'/2
    const double diff = RmP * (R + P) + SmQ * (S + Q);  // pi/sqrt(z) (N^2 - z M^2)
    ModulusDerivs d;
    d.a = m2 / (kPi * std::sqrt(z));
    d.dln = 2.0 * std::sqrt(z) * cross / m2;
    // A'' = 2 (N^2 - z M^2) with N^2 = Ai'^2 + Bi'^2.
    d.d2_full = 2.0 * z * diff / m2;
    return d;
}

}  // namespace detail

}  // namespace qrho::special
