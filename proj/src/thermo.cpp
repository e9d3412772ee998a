#include <qrho/thermo/thermo.hpp>

#include <qrho/fp/stationary.hpp>
#include <qrho/special/airy.hpp>
#include <qrho/special/quadrature.hpp>

#include <cmath>
#include <string>

namespace qrho::thermo {

namespace {

void check_pos(double v, const char* name, const char* who) {
    if (!(v > 0.0))
        throw DomainError(std::string(who) + ": " + name + " must be > 0");
}

double ln_theta(double e, double epsilon_plus) {
    const double ebar = e / std::pow(epsilon_plus, 2.0 / 3.0);
    return special::ln_airy_modulus_sq(-ebar) - special::ln_airy_modulus_sq(ebar);
}

}  // namespace

double epsilon_plus_of(double lambda_plus, double omega_as) {
    check_pos(lambda_plus, "lambda_plus", "epsilon_plus_of");
    check_pos(omega_as, "omega_as", "epsilon_plus_of");
    const double e13 = omega_as / std::sqrt(lambda_plus);
    return e13 * e13 * e13;
}

DistributionFunction distribution(double e, double epsilon_plus) {
    check_pos(e, "E", "distribution");
    check_pos(epsilon_plus, "epsilon_plus", "distribution");
    return {epsilon_plus, e, fp::p_e(e, epsilon_plus)};
}

Potentials potentials(double e, double epsilon_plus, double k) {
    check_pos(e, "E", "potentials");
    check_pos(epsilon_plus, "epsilon_plus", "potentials");

    // d(ln theta)/d eps by central differences with one Richardson level.
    const double h = 1e-4 * epsilon_plus;
    if (!(epsilon_plus + h > epsilon_plus))
        throw DomainError("potentials: finite-difference step underflowed");
    auto central = [&](double hh) {
        return (ln_theta(e, epsilon_plus + hh) - ln_theta(e, epsilon_plus - hh)) /
               (2.0 * hh);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    const double dln = (4.0 * d2 - d1) / 3.0;

    Potentials p;
    // The 3/2 turns d/d eps at fixed E into the derivative conjugate to
    // Ebar (Ebar = E eps^{-2/3}), which is the variable the closed entropy
    // forms are written in; it also keeps U > 0.
    p.internal_energy = 1.5 * dln;
    p.helmholtz = -ln_theta(e, epsilon_plus) / epsilon_plus;
    p.entropy = epsilon_plus * k * (p.internal_energy + p.helmholtz);
    return p;
}

double entropy_direct(double e, double epsilon_plus, double k) {
    check_pos(e, "E", "entropy_direct");
    check_pos(epsilon_plus, "epsilon_plus", "entropy_direct");
    const double ebar = e / std::pow(epsilon_plus, 2.0 / 3.0);
    const auto mm = special::detail::modulus_derivs(-ebar);
    const auto mp = special::detail::modulus_derivs(ebar);
    const double d = mm.dln + mp.dln;
    const double l = special::ln_airy_modulus_sq(ebar) -
                     special::ln_airy_modulus_sq(-ebar);
    return k * (ebar * d + l);
}

GroundEnergy ground_energy(double lambda_plus, double omega_as,
                           std::optional<double> cutoff) {
    check_pos(lambda_plus, "lambda_plus", "ground_energy");
    check_pos(omega_as, "omega_as", "ground_energy");

    const auto md = special::detail::modulus_derivs(-lambda_plus);
    GroundEnergy g;
    // d2_full = (d ln A)^2 + d^2 ln A = A''/A.
    g.e_osc = 0.5 * omega_as * (1.0 - md.d2_full / lambda_plus);
    g.width_term = 0.5 * omega_as / std::sqrt(lambda_plus) * md.dln;
    g.decay_time = 2.0 * std::sqrt(lambda_plus) / (omega_as * md.dln);
    if (cutoff) {
        // Divergent vacuum piece, exposed only behind an explicit cutoff:
        // (omega/2) A_{-3/2}(cutoff..inf) / A_{-1/2}.
        const double num =
            special::a_p_log(-1.5, -1, lambda_plus, cutoff);
        const double den = special::a_p_log(-0.5, -1, lambda_plus);
        g.vacuum_term = 0.5 * omega_as * std::exp(num - den);
    }
    return g;
}

double ground_entropy(double lambda_plus, double omega_as, double k) {
    check_pos(lambda_plus, "lambda_plus", "ground_entropy");
    check_pos(omega_as, "omega_as", "ground_entropy");
    const double eps = epsilon_plus_of(lambda_plus, omega_as);
    const double e0 = ground_energy(lambda_plus, omega_as).e_osc;
    const double beta = e0 / std::pow(eps, 2.0 / 3.0);

    // ln A_p at the signed argument q beta (beta itself turns negative once
    // the level shift exceeds omega/2 at small lambda_plus).
    auto lg = [&](double p, int q) {
        const int qq = beta >= 0.0 ? q : -q;
        return special::a_p_log(p, qq, std::fabs(beta));
    };
    const double lg_m12_m = lg(-0.5, -1);
    const double lg_m12_p = lg(-0.5, 1);
    const double lg_p12_m = lg(0.5, -1);
    const double lg_p12_p = lg(0.5, 1);
    const double bracket = std::exp(lg_p12_m - lg_m12_m) + std::exp(lg_p12_p - lg_m12_p);
    return k * (beta * bracket + (lg_m12_p - lg_m12_m));
}

ThermoPoint thermo_point(double lambda_plus, double omega_as, double k) {
    ThermoPoint tp;
    tp.lambda_plus = lambda_plus;
    tp.omega_as = omega_as;
    tp.boltzmann_k = k;
    const GroundEnergy g = ground_energy(lambda_plus, omega_as);
    tp.e_osc = g.e_osc;
    tp.level_width = g.width_term;
    tp.beta_plus = g.e_osc / std::pow(epsilon_plus_of(lambda_plus, omega_as), 2.0 / 3.0);
    tp.entropy = ground_entropy(lambda_plus, omega_as, k);
    return tp;
}

}  // namespace qrho::thermo
