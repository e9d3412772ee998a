#pragma once

#include <qrho/wavefunc/frame.hpp>

#include <Eigen/Core>
#include <complex>

namespace qrho::wavefunc {

// Local transition matrix between an in-channel frame and an out-channel
// frame, entries S_nm for 0 <= n, m <= n_max.
struct SMatrixLocal {
    int n_max = 0;
    Eigen::MatrixXcd entries;
    OscFrame frame_in;
    OscFrame frame_out;
    double omega_in = 1.0;
    double omega_out = 1.0;

    // |sum_{k<=K} S_kn conj(S_km) - delta_nm| for the truncated unitarity sum.
    double unitarity_defect(int K, int n, int m) const;
};

// Gaussian overlap I(z, z_plus^*) of the two generating packets
// (closed form; the generating functional of the S-matrix elements).
std::complex<double> generating_overlap(std::complex<double> z,
                                        std::complex<double> z_plus_conj,
                                        const OscFrame& in, const OscFrame& out);

// All S_nm with n, m <= n_max via the exact Taylor-coefficient recurrence
// for exp of a bivariate quadratic form.
SMatrixLocal s_local(int n_max, const OscFrame& in, const OscFrame& out);

// Closed algebraic forms of the first few elements (S11 = S00^3 etc.),
// kept as an independent route for cross-checks.
std::complex<double> s00_closed(const OscFrame& in, const OscFrame& out);
std::complex<double> s11_closed(const OscFrame& in, const OscFrame& out);
std::complex<double> s20_closed(const OscFrame& in, const OscFrame& out);
std::complex<double> s02_closed(const OscFrame& in, const OscFrame& out);

// Square-root branch continuation along a trajectory: keeps the argument
// of the radicand unwrapped so S00 stays continuous.
class SqrtBranch {
  public:
    std::complex<double> eval(std::complex<double> radicand);

  private:
    bool primed_ = false;
    double arg_ = 0.0;
};

}  // namespace qrho::wavefunc
