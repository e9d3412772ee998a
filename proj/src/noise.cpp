#include <qrho/sde/noise.hpp>

#include <cmath>

namespace qrho::sde {

namespace detail {

namespace {

constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    const unsigned __int128 p = (unsigned __int128)a * b;
    hi = (std::uint64_t)(p >> 64);
    lo = (std::uint64_t)p;
}

}  // namespace

TwoWords philox2x64(std::uint64_t step, std::uint64_t stream, std::uint64_t seed) {
    std::uint64_t c0 = step;
    std::uint64_t c1 = stream;
    std::uint64_t key = seed;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi, lo;
        mulhilo(kPhiloxM, c0, hi, lo);
        const std::uint64_t n0 = hi ^ key ^ c1;
        c1 = lo;
        c0 = n0;
        key += kWeyl;
    }
    return {c0, c1};
}

namespace {

// Inverse normal CDF (Acklam rational approximations, |rel err| < 1.2e-9;
// far below any statistical resolution this library reaches).  The central
// branch needs no transcendentals, which matters in the stepping loop.
double inverse_normal_cdf(double u) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    if (u < plow) {
        const double q = std::sqrt(-2.0 * std::log(u));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (u > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = u - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double standard_normal(std::uint64_t step, std::uint64_t stream, std::uint64_t seed) {
    // One counter word feeds the normals for steps (2j, 2j+1); the value
    // stays a pure function of (step, stream, seed).
    const TwoWords w = philox2x64(step >> 1, stream, seed);
    const std::uint64_t word = (step & 1) ? w.b : w.a;
    // uniform in (0, 1), bounded away from both ends.
    const double u = ((word >> 11) + 0.5) * 0x1.0p-53;
    return inverse_normal_cdf(u);
}

double NormalStream::operator()(std::uint64_t step) {
    const std::uint64_t pair = step >> 1;
    if (pair != cached_pair) {
        const TwoWords w = philox2x64(pair, stream, seed);
        z[0] = inverse_normal_cdf(((w.a >> 11) + 0.5) * 0x1.0p-53);
        z[1] = inverse_normal_cdf(((w.b >> 11) + 0.5) * 0x1.0p-53);
        cached_pair = pair;
    }
    return z[step & 1];
}

}  // namespace detail

Eigen::ArrayXd noise_increments(const NoiseSpec& spec, double dt, Eigen::Index count) {
    spec.validate();
    if (!(dt > 0.0)) throw DomainError("noise_increments: dt must be > 0");
    if (count < 0) throw DomainError("noise_increments: count must be >= 0");
    Eigen::ArrayXd out(count);
    if (spec.epsilon == 0.0) {
        out.setZero();
        return out;
    }
    const double amp = std::sqrt(2.0 * spec.epsilon * dt);
    detail::NormalStream ns{spec.stream_id, spec.seed};
    for (Eigen::Index k = 0; k < count; ++k) out[k] = amp * ns((std::uint64_t)k);
    return out;
}

}  // namespace qrho::sde
