#pragma once

#include <Eigen/Core>

namespace qrho::wavefunc {

// Gauss-Hermite rule for weight e^{-x^2} on (-inf, inf), exact for
// polynomials of degree 2n-1.  Golub-Welsch via Eigen's symmetric solver.
struct GaussHermiteRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

GaussHermiteRule gauss_hermite(int n);

}  // namespace qrho::wavefunc
