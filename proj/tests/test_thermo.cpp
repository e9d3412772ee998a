#include <doctest.h>

#include <qrho/fp/stationary.hpp>
#include <qrho/special/airy.hpp>
#include <qrho/thermo/thermo.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace qrho;

TEST_CASE("distribution function: oracle value, limits, microcanonical scaling") {
    const auto d = thermo::distribution(1.0, 1.0);  // Ebar = 1
    CHECK(d.value == doctest::Approx(0.20163).epsilon(1e-4));
    CHECK(d.value == doctest::Approx(fp::p_e(1.0, 1.0)).epsilon(1e-14));
    CHECK(thermo::distribution(1e-10, 1.0).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.value > 0.0);
    CHECK(d.value <= 1.0);

    // Microcanonical matching as a scaling property: -ln theta approaches
    // E/(kT) with eps_plus proportional to sqrt(E) kT, i.e.
    // -ln theta * eps_plus / E^{3/2} tends to the 4/3 saddle constant.
    {
        const double eps = 1.0;
        const double r25 = -std::log(thermo::distribution(25.0, eps).value) /
                           std::pow(25.0, 1.5);
        const double r64 = -std::log(thermo::distribution(64.0, eps).value) /
                           std::pow(64.0, 1.5);
        CHECK(r25 == doctest::Approx(4.0 / 3.0).epsilon(0.05));
        CHECK(std::fabs(r64 - 4.0 / 3.0) < std::fabs(r25 - 4.0 / 3.0));
    }

    CHECK_THROWS_AS(thermo::distribution(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(thermo::distribution(1.0, 0.0), DomainError);
}

TEST_CASE("potentials: composition equals the direct entropy route") {
    for (double ebar : {0.1, 0.3, 1.0, 3.0, 10.0}) {
        const double eps = 0.7;
        const double e = ebar * std::pow(eps, 2.0 / 3.0);
        const auto p = thermo::potentials(e, eps, 1.0);
        const double direct = thermo::entropy_direct(e, eps, 1.0);
        CHECK(p.entropy ==
              doctest::Approx(direct).epsilon(1e-4).scale(std::fabs(direct)));
        CHECK(p.internal_energy > 0.0);
        CHECK(std::isfinite(p.internal_energy));
    }
    // Ebar -> 0: ln theta -> 0 so F -> 0.
    const auto p0 = thermo::potentials(1e-9, 1.0, 1.0);
    CHECK(std::fabs(p0.helmholtz) < 1e-4);
}

TEST_CASE("ground energy: derivative oracle, asymptote, small-coupling blow-up") {
    // d_alpha ln A at alpha = 0, lambda_plus = 0 from series-oracle values.
    const auto o = oracles::airy_series(0.0);
    const double ref = 2.0 * (o.ai * o.aip + o.bi * o.bip) / (o.ai * o.ai + o.bi * o.bi);
    const auto md = special::detail::modulus_derivs(0.0);
    CHECK(md.dln == doctest::Approx(ref).epsilon(1e-12));
    CHECK(md.dln == doctest::Approx(0.72901).epsilon(1e-4));

    // Analytic alpha-derivatives vs central finite differences on [-10, 2].
    for (double x = -10.0; x <= 2.0; x += 0.5) {
        const double h = 1e-6;
        const double fd = (special::ln_airy_modulus_sq(x + h) -
                           special::ln_airy_modulus_sq(x - h)) /
                          (2.0 * h);
        CHECK(special::detail::modulus_derivs(x).dln ==
              doctest::Approx(fd).epsilon(1e-8));
    }

    // e_osc -> omega/2 monotonically; below 1% of omega/2 at lambda_plus = 1e3.
    double prev = 1e9;
    for (double lp : {10.0, 100.0, 1000.0}) {
        const auto g = thermo::ground_energy(lp, 2.0);
        const double dev = std::fabs(g.e_osc - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 0.01 * 1.0);

    // Small lambda_plus: the 1/lambda bracket and the width blow up.
    const auto weak = thermo::ground_energy(1000.0, 1.0);
    const auto strong = thermo::ground_energy(0.05, 1.0);
    CHECK(std::fabs(strong.e_osc - 0.5) > 100.0 * std::fabs(weak.e_osc - 0.5));
    CHECK(strong.width_term > 1e3 * weak.width_term);

    // Width is positive (A' > 0 everywhere), decay time is its inverse.
    for (double lp : {0.1, 1.0, 30.0, 1000.0}) {
        const auto g = thermo::ground_energy(lp, 1.0);
        CHECK(g.width_term > 0.0);
        CHECK(g.decay_time == doctest::Approx(1.0 / g.width_term).epsilon(1e-12));
    }
}

TEST_CASE("vacuum term is exposed only behind an explicit cutoff") {
    const auto no_cut = thermo::ground_energy(2.0, 1.0);
    CHECK(!no_cut.vacuum_term.has_value());
    const auto with_cut = thermo::ground_energy(2.0, 1.0, 1e-4);
    REQUIRE(with_cut.vacuum_term.has_value());
    CHECK(*with_cut.vacuum_term > 0.0);
    // Divergence: the term grows like cutoff^{-1/2}.
    const auto finer = thermo::ground_energy(2.0, 1.0, 1e-8);
    CHECK(*finer.vacuum_term > 50.0 * *with_cut.vacuum_term);
    CHECK_THROWS_AS((void)thermo::ground_energy(2.0, 1.0, -1.0), DomainError);
}

TEST_CASE("ground entropy: route consistency, beta scaling, finite sweep") {
    // A_p-integral route vs the alpha-derivative route at E_osc.
    for (double lp : {1.0, 2.0, 10.0, 50.0}) {
        const double eps = thermo::epsilon_plus_of(lp, 1.0);
        const double e0 = thermo::ground_energy(lp, 1.0).e_osc;
        const double s22 = thermo::ground_entropy(lp, 1.0, 1.0);
        const double s21 = thermo::entropy_direct(e0, eps, 1.0);
        CHECK(s22 == doctest::Approx(s21).epsilon(1e-6));
    }
    // The log term vanishes at beta = 0: A_{-1/2}(0)/A_{-1/2}(0) = 1.
    CHECK(special::a_p_log(-0.5, 1, 0.0) == special::a_p_log(-0.5, -1, 0.0));

    // Saddle-point scaling of the log term at beta = 25: (4/3) beta^{3/2}.
    {
        const double l = special::a_p_log(-0.5, 1, 25.0) - special::a_p_log(-0.5, -1, 25.0);
        CHECK(l == doctest::Approx(4.0 / 3.0 * std::pow(25.0, 1.5)).epsilon(0.1));
    }

    // Finite over the whole sweep, including the beta < 0 regime.
    for (double lp = 0.1; lp <= 1000.0; lp *= 2.3) {
        const double s = thermo::ground_entropy(lp, 1.0, 1.0);
        CHECK(std::isfinite(s));
    }

    // Boltzmann constant enters multiplicatively.
    CHECK(thermo::ground_entropy(2.0, 1.0, 3.0) ==
          doctest::Approx(3.0 * thermo::ground_entropy(2.0, 1.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("thermo_point collects the sweep quantities consistently") {
    const auto tp = thermo::thermo_point(10.0, 1.0, 1.0);
    const auto g = thermo::ground_energy(10.0, 1.0);
    CHECK(tp.e_osc == g.e_osc);
    CHECK(tp.level_width == g.width_term);
    CHECK(tp.entropy == thermo::ground_entropy(10.0, 1.0, 1.0));
    CHECK(tp.beta_plus ==
          doctest::Approx(g.e_osc * 10.0 / 1.0).epsilon(1e-12));  // e_osc lp / omega^2
    CHECK(tp.boltzmann_k == 1.0);
}
