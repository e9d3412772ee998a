#pragma once

#include <qrho/errors.hpp>

#include <functional>
#include <optional>

namespace qrho::special {

enum class SemiInfiniteMapping {
    kExponentialSubstitution,  // z = a - s ln(1-u), u in (0,1)
    kAlgebraicSubstitution,    // z = a + s u/(1-u)
};

struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_floor = 1e-300;
    int max_refinements = 24;  // max bisection depth per panel
    SemiInfiniteMapping semi_infinite_mapping =
        SemiInfiniteMapping::kExponentialSubstitution;

    void validate() const {
        if (!(relative_tolerance > 0.0))
            throw DomainError("QuadratureSpec: relative_tolerance must be > 0");
        if (max_refinements < 1)
            throw DomainError("QuadratureSpec: max_refinements must be >= 1");
    }
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Integration domain: [a, b] when `b` is set, [a, inf) otherwise.  When
// sqrt_singularity_at_a is true the integrand may behave like
// (z-a)^{-1/2} near a and the z = a + u^2 substitution is applied.
struct Domain {
    double a = 0.0;
    std::optional<double> b{};
    bool sqrt_singularity_at_a = false;
    double scale = 1.0;  // characteristic decay length for the semi-infinite maps

    static Domain finite(double a, double b) { return {a, b, false, 1.0}; }
    static Domain semi_infinite(double a, double scale = 1.0) {
        return {a, std::nullopt, false, scale};
    }
};

// Adaptive Gauss-Kronrod (G7,K15) integration.  Throws ConvergenceError
// (carrying the best estimate and residual) when the error estimate still
// exceeds the tolerance at max_refinements depth.
IntegrationResult integrate(const std::function<double(double)>& f,
                            const Domain& domain,
                            const QuadratureSpec& spec = {});

// A_p(q beta) = int_0^inf z^p exp(-z^3/12 + q beta z) dz for
// p in {-3/2, -1/2, 1/2, 3/2} and q = +-1.  For p = -3/2 the integral
// diverges at z = 0 and an explicit positive lower cutoff is required.
double a_p_integral(double p, int q_sign, double beta,
                    std::optional<double> cutoff = std::nullopt,
                    const QuadratureSpec& spec = {});

// ln A_p(q beta), evaluated with the peak exponent factored out so that
// arbitrarily large beta is representable.  Same p/q domain as above.
double a_p_log(double p, int q_sign, double beta,
               std::optional<double> cutoff = std::nullopt,
               const QuadratureSpec& spec = {});

}  // namespace qrho::special
