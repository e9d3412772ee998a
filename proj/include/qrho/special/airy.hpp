#pragma once

#include <qrho/errors.hpp>

namespace qrho::special {

// Real-argument Airy functions with first derivatives and the squared
// modulus A(x) = Ai^2(x) + Bi^2(x).
struct AiryValues {
    double x;
    double ai;
    double ai_prime;
    double bi;
    double bi_prime;
    double modulus_sq;
};

// Largest argument accepted by airy(); Bi overflows close beyond it.
inline constexpr double kAiryArgMax = 110.0;

// Ai, Bi and derivatives at x.  Requires |x| <= kAiryArgMax.
AiryValues airy(double x);

// A(x) = Ai^2(x) + Bi^2(x).  Accepts x <= kAiryArgMax; arbitrarily large
// negative arguments are fine (the oscillatory phase cancels in the
// modulus, so only the smooth envelope is evaluated there).
double airy_modulus_sq(double x);

// log A(x).  Valid for any finite x up to roughly 1e250 in magnitude on
// the positive side; used where A itself would over/underflow a double.
double ln_airy_modulus_sq(double x);

namespace detail {

// A, A'/A and A''/A with A'' taken from the Airy ODE:
//   A'  = 2 (Ai Ai' + Bi Bi')
//   A'' = 2 (Ai'^2 + Bi'^2 + x (Ai^2 + Bi^2))
// Stable for arbitrarily negative x (the A'' combination is formed from
// series differences, not by subtracting two nearly equal moduli).
struct ModulusDerivs {
    double a;        // A(x)
    double dln;      // A'/A
    double d2_full;  // A''/A  ( = (d/dx ln A)^2 + d^2/dx^2 ln A )
};
ModulusDerivs modulus_derivs(double x);

}  // namespace detail

}  // namespace qrho::special
