#include <qrho/wavefunc/gauss_hermite.hpp>

#include <qrho/errors.hpp>

#include <Eigen/Dense>
#include <cmath>

namespace qrho::wavefunc {

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw DomainError("gauss_hermite: need n >= 1");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues().array();
    const double mu0 = std::sqrt(M_PI);
    rule.weights = mu0 * es.eigenvectors().row(0).array().square().transpose();
    return rule;
}

}  // namespace qrho::wavefunc
