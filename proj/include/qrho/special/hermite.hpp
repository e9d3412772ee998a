#pragma once

#include <qrho/errors.hpp>

namespace qrho::special {

// Highest Hermite order supported by the double-precision recurrence.
inline constexpr int kHermiteMaxOrder = 64;

// Physicists' Hermite polynomial H_n(x) via the three-term recurrence
// H_{k+1} = 2 x H_k - 2 k H_{k-1}.
double hermite(int n, double x);

// n! as a double, n <= kHermiteMaxOrder, precomputed to < 1 ulp * n.
double factorial(int n);

}  // namespace qrho::special
