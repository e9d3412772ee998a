#pragma once

// Lean Gauss-Kronrod(7,15) kernels for internal hot paths.  The callable
// returns a Pair so two integrals sharing one integrand evaluation (e.g. a
// density and its moment) cost a single pass.

#include <cmath>
#include <utility>

namespace qrho::special::detail {

struct Pair2 {
    double a = 0.0;
    double b = 0.0;
    Pair2& operator+=(const Pair2& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
};

inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
Pair2 gk15_pair(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Pair2 fc = f(c);
    Pair2 res_k{fc.a * kGk15WeightsK[7], fc.b * kGk15WeightsK[7]};
    double gauss_a = fc.a * kGk15WeightsG[3];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kGk15Nodes[j];
        const Pair2 f1 = f(c - x);
        const Pair2 f2 = f(c + x);
        res_k.a += kGk15WeightsK[j] * (f1.a + f2.a);
        res_k.b += kGk15WeightsK[j] * (f1.b + f2.b);
        if (j % 2 == 1) gauss_a += kGk15WeightsG[j / 2] * (f1.a + f2.a);
    }
    res_k.a *= h;
    res_k.b *= h;
    err = std::fabs(res_k.a - gauss_a * h);
    return res_k;
}

template <typename F>
void adapt_pair(const F& f, double a, double b, double tol, int depth, Pair2& acc,
                double& err_acc) {
    double err;
    const Pair2 r = gk15_pair(f, a, b, err);
    if (err <= tol || depth >= 24) {
        acc += r;
        err_acc += err;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt_pair(f, a, m, 0.5 * tol, depth + 1, acc, err_acc);
    adapt_pair(f, m, b, 0.5 * tol, depth + 1, acc, err_acc);
}

}  // namespace qrho::special::detail
