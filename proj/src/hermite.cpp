#include <qrho/special/hermite.hpp>

#include <array>
#include <string>

namespace qrho::special {

double hermite(int n, double x) {
    if (n < 0) throw DomainError("hermite: order must be non-negative");
    if (n > kHermiteMaxOrder)
        throw CapabilityError("hermite: order exceeds supported bound " +
                              std::to_string(kHermiteMaxOrder));
    if (n == 0) return 1.0;
    double hkm1 = 1.0;
    double hk = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double hk1 = 2.0 * x * hk - 2.0 * k * hkm1;
        hkm1 = hk;
        hk = hk1;
    }
    return hk;
}

double factorial(int n) {
    if (n < 0 || n > kHermiteMaxOrder)
        throw CapabilityError("factorial: order outside [0, " +
                              std::to_string(kHermiteMaxOrder) + "]");
    static const std::array<double, kHermiteMaxOrder + 1> table = [] {
        std::array<double, kHermiteMaxOrder + 1> t{};
        // Accumulate in long double so the stored doubles are correctly
        // rounded for every n in range.
        long double acc = 1.0L;
        t[0] = 1.0;
        for (int k = 1; k <= kHermiteMaxOrder; ++k) {
            acc *= k;
            t[k] = (double)acc;
        }
        return t;
    }();
    return table[n];
}

}  // namespace qrho::special
