#include <qrho/wavefunc/smatrix.hpp>

#include <qrho/special/hermite.hpp>
#include <qrho/wavefunc/psi.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qrho::wavefunc {

namespace {

using cd = std::complex<double>;

// Shared pieces of the overlap: I = G exp(alpha z^2 + beta z w + gamma w^2)
// with w = z_plus^*.
struct OverlapCoeffs {
    cd g;      // G = S00
    cd alpha;  // z^2 coefficient
    cd beta;   // z w coefficient
    cd gamma;  // w^2 coefficient
};

OverlapCoeffs overlap_coeffs(const OscFrame& in, const OscFrame& out) {
    const cd i(0.0, 1.0);
    const cd eta_c = std::conj(out.xi);
    const cd eta_dot_c = std::conj(out.xi_dot);
    const cd diff = in.xi_dot / in.xi - eta_dot_c / eta_c;
    const cd a = -i * diff;
    if (a.real() < 0.0)
        throw DomainError(
            "generating_overlap: Re(A) < 0, the x-overlap is non-integrable "
            "for these frames");
    OverlapCoeffs c;
    const cd rad = a * in.xi * eta_c;
    // Same branch convention as the printed closed form, so the two routes
    // agree including sign: G = (4 w w')^{1/4} e^{i pi/4} (xi eta* diff)^{-1/2}.
    c.g = std::pow(4.0 * in.omega * out.omega, 0.25) *
          std::polar(1.0, M_PI / 4.0) / std::sqrt(in.xi * eta_c * diff);
    c.alpha = -0.5 * std::exp(cd(0.0, -2.0 * in.r)) + in.omega / (a * in.xi * in.xi);
    c.beta = 2.0 * std::sqrt(in.omega * out.omega) / rad;
    c.gamma = -0.5 * std::exp(cd(0.0, 2.0 * out.r)) + out.omega / (a * eta_c * eta_c);
    return c;
}

}  // namespace

std::complex<double> generating_overlap(std::complex<double> z,
                                        std::complex<double> z_plus_conj,
                                        const OscFrame& in, const OscFrame& out) {
    const OverlapCoeffs c = overlap_coeffs(in, out);
    const cd w = z_plus_conj;
    return c.g * std::exp(c.alpha * z * z + c.beta * z * w + c.gamma * w * w);
}

SMatrixLocal s_local(int n_max, const OscFrame& in, const OscFrame& out) {
    if (n_max < 0 || n_max > kLevelMax)
        throw CapabilityError("s_local: n_max outside [0, " +
                              std::to_string(kLevelMax) + "]");
    const OverlapCoeffs c = overlap_coeffs(in, out);

    SMatrixLocal s;
    s.n_max = n_max;
    s.frame_in = in;
    s.frame_out = out;
    s.omega_in = in.omega;
    s.omega_out = out.omega;
    s.entries = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);

    // Power tables up to n_max.
    std::vector<cd> ap(n_max + 1), bp(n_max + 1), gp(n_max + 1);
    ap[0] = bp[0] = gp[0] = 1.0;
    for (int k = 1; k <= n_max; ++k) {
        ap[k] = ap[k - 1] * c.alpha;
        bp[k] = bp[k - 1] * c.beta;
        gp[k] = gp[k - 1] * c.gamma;
    }

    // S_nm = G sqrt(n! m!) sum_k alpha^{(n-k)/2} beta^k gamma^{(m-k)/2}
    //                            / ( ((n-k)/2)! ((m-k)/2)! k! )
    // over k <= min(n,m) with n-k and m-k even.  Odd n+m has no admissible
    // k, which is the parity selection rule.
    using special::factorial;
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n_max; ++m) {
            if ((n + m) % 2 != 0) continue;
            cd acc = 0.0;
            const double pref = std::sqrt(factorial(n) * factorial(m));
            for (int k = (n % 2); k <= std::min(n, m); k += 2) {
                const int p = (n - k) / 2;
                const int q = (m - k) / 2;
                acc += ap[p] * bp[k] * gp[q] /
                       (factorial(p) * factorial(q) * factorial(k));
            }
            s.entries(n, m) = c.g * pref * acc;
        }
    }
    return s;
}

double SMatrixLocal::unitarity_defect(int K, int n, int m) const {
    if (K > n_max || n > n_max || m > n_max)
        throw DomainError("unitarity_defect: indices exceed n_max");
    cd acc = 0.0;
    for (int k = 0; k <= K; ++k) acc += entries(k, n) * std::conj(entries(k, m));
    return std::abs(acc - (n == m ? 1.0 : 0.0));
}

std::complex<double> s00_closed(const OscFrame& in, const OscFrame& out) {
    const cd i(0.0, 1.0);
    const cd eta_c = std::conj(out.xi);
    const cd eta_dot_c = std::conj(out.xi_dot);
    const cd diff = in.xi_dot / in.xi - eta_dot_c / eta_c;
    const cd rad = in.xi * eta_c * diff;
    return std::pow(4.0 * in.omega * out.omega, 0.25) *
           std::polar(1.0, M_PI / 4.0) / std::sqrt(rad);
}

std::complex<double> s11_closed(const OscFrame& in, const OscFrame& out) {
    const cd s00 = s00_closed(in, out);
    return s00 * s00 * s00;
}

std::complex<double> s20_closed(const OscFrame& in, const OscFrame& out) {
    const cd s00 = s00_closed(in, out);
    const cd eta_c = std::conj(out.xi);
    const cd bracket = -std::exp(cd(0.0, -2.0 * in.r)) +
                       std::sqrt(in.omega / out.omega) * (eta_c / in.xi) * s00 * s00;
    return s00 * bracket / std::sqrt(2.0);
}

std::complex<double> s02_closed(const OscFrame& in, const OscFrame& out) {
    const cd s00 = s00_closed(in, out);
    const cd eta_c = std::conj(out.xi);
    const cd bracket = -std::exp(cd(0.0, 2.0 * out.r)) +
                       std::sqrt(out.omega / in.omega) * (in.xi / eta_c) * s00 * s00;
    return s00 * bracket / std::sqrt(2.0);
}

std::complex<double> SqrtBranch::eval(std::complex<double> radicand) {
    const double raw = std::arg(radicand);
    if (!primed_) {
        arg_ = raw;
        primed_ = true;
    } else {
        arg_ += std::remainder(raw - arg_, 2.0 * M_PI);
    }
    return std::polar(std::sqrt(std::abs(radicand)), 0.5 * arg_);
}

}  // namespace qrho::wavefunc
