#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: adaptive Simpson quadrature, a plain RK4 driver, closed-form series,
// and a tiny deterministic RNG for property tests.

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracles {

namespace detail {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

inline double geometric_first_width(double span, double r, int m) {
    return span * (r - 1.0) / (std::pow(r, m) - 1.0);
}

/// Classical RK4 with a fixed number of equal steps.
inline double rk4(const std::function<double(double, double)>& rhs, double x0, double y0,
                  double x1, int steps) {
    const double h = (x1 - x0) / steps;
    double y = y0;
    for (int j = 0; j < steps; ++j) {
        const double x = x0 + j * h;
        const double k1 = rhs(x, y);
        const double k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(x + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

/// High-precision evaluation of the equilibrium photon number by a long
/// double reciprocal series (valid for mu >= 4).
inline long double equilibrium_number_series(long double mu, int terms = 40) {
    const long double u = 1.0L / mu;
    long double r = 0.0L;
    for (int k = terms; k >= 3; --k) {
        const long double t = ((k & 1) ? 1.0L : -1.0L) / (long double)k;
        r = t + u * r;
    }
    return mu * mu * (u * u * u * r);
}

struct Lcg {
    std::uint64_t s = 0x9e3779b97f4a7c15ULL;
    double next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return double(s >> 11) / 9007199254740992.0;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
};

}  // namespace oracles
