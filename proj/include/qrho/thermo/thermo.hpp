#pragma once

#include <qrho/errors.hpp>

#include <optional>

namespace qrho::thermo {

// Equilibrium distribution function of quantum states,
// theta^(m)(eps_plus, E) = A(-Ebar)/A(Ebar) with Ebar = E/eps_plus^{2/3}.
struct DistributionFunction {
    double epsilon_plus;
    double e;
    double value;  // in (0, 1] for E > 0
};
DistributionFunction distribution(double e, double epsilon_plus);

// Thermodynamic potentials of a level with mean energy E.  U is the
// eps_plus-derivative route (central differences with Richardson), F the
// direct log form, S = eps_plus k (U + F).
struct Potentials {
    double internal_energy;
    double helmholtz;
    double entropy;
};
Potentials potentials(double e, double epsilon_plus, double k);

// Entropy of the level through the Airy-derivative form
//   S = k [ Ebar (A'(-Ebar)/A(-Ebar) + A'(Ebar)/A(Ebar)) + ln(A(Ebar)/A(-Ebar)) ]
// -- the closed route the finite-difference composition is checked against.
double entropy_direct(double e, double epsilon_plus, double k);

// Ground-state energy decomposition at coupling lambda_plus.
struct GroundEnergy {
    std::optional<double> vacuum_term;  // only with an explicit cutoff
    double e_osc;
    double width_term;   // level width, = 1/decay time
    double decay_time;
};
GroundEnergy ground_energy(double lambda_plus, double omega_as,
                           std::optional<double> cutoff = std::nullopt);

// Ground-state entropy via the A_p-integral form evaluated in log space.
double ground_entropy(double lambda_plus, double omega_as, double k);

// One point of the vacuum-thermodynamics sweep.
struct ThermoPoint {
    double lambda_plus;
    double omega_as;
    double beta_plus;
    double e_osc;
    double level_width;
    double entropy;
    double boltzmann_k;
};
ThermoPoint thermo_point(double lambda_plus, double omega_as, double k = 1.0);

// eps_plus from (lambda_plus, omega_as): lambda_plus = (omega/eps^{1/3})^2.
double epsilon_plus_of(double lambda_plus, double omega_as);

}  // namespace qrho::thermo
