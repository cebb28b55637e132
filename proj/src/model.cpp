#include "becsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace becsim {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
}

// Adaptive Simpson quadrature; integrands here are smooth bumps.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double raw_bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double bump_mass() {
    static const double mass = integrate([](double u) { return raw_bump(u); }, -1.0, 1.0, 1e-15);
    return mass;
}

}  // namespace

double bump(double u) { return raw_bump(u) / bump_mass(); }

double bump_derivative(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double d = 1.0 - u * u;
    return bump(u) * (-2.0 * u / (d * d));
}

double bump_cdf(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return integrate([](double z) { return raw_bump(z); }, -1.0, u, 1e-15) / bump_mass();
}

CutoffProfile CutoffProfile::bump_integral(double h) {
    if (!(h > 0.0 && h < 0.5))
        throw std::invalid_argument("CutoffProfile: width h must lie in (0, 0.5)");
    CutoffProfile p;
    p.h = h;
    p.chi = [](double u) { return bump_cdf(u); };
    return p;
}

double flux_pointwise(double n, double dn_dx, double x) {
    return x * x * dn_dx + n * n - 2.0 * x * n;
}

double flux_model(double n_left, double n_right, double x, double dn_dx) {
    require_finite(n_left, "flux_model: n_left");
    require_finite(n_right, "flux_model: n_right");
    require_finite(dn_dx, "flux_model: dn_dx");
    if (n_left < 0.0 || n_right < 0.0)
        throw std::invalid_argument("flux_model: densities must be nonnegative");
    const double gl = n_left * n_left - 2.0 * x * n_left;
    const double gr = n_right * n_right - 2.0 * x * n_right;
    const double alpha = std::max(std::abs(2.0 * n_left - 2.0 * x), std::abs(2.0 * n_right - 2.0 * x));
    return x * x * dn_dx + 0.5 * (gl + gr) + 0.5 * alpha * (n_right - n_left);
}

double cutoff_flux(double n, double dn_dx, double x, const CutoffProfile& profile) {
    const double c = profile.chi_h(x);
    return x * x * dn_dx - 2.0 * x * n + n * n + (3.0 * n - n * n) * c;
}

double supersolution(double x, double t, double tau1) {
    const double ts = t + tau1;
    if (std::isinf(ts)) return x;
    if (!(ts > 0.0)) throw std::invalid_argument("supersolution: shifted time must be positive");
    return x + (1.0 - x) / ts + 2.0 / std::sqrt(ts);
}

double equilibrium_density(double mu, double x) {
    if (!(mu >= 0.0)) throw std::invalid_argument("equilibrium_density: mu must be >= 0");
    return x * x / (x + mu);
}

double equilibrium_number(double mu) {
    if (!(mu >= 0.0)) throw std::invalid_argument("equilibrium_number: mu must be >= 0");
    if (mu == 0.0) return 0.5;
    // N(mu) = 1/2 - mu + mu^2 log(1 + 1/mu) = mu^2 R(u), u = 1/mu,
    // with R(u) = log1p(u) - u + u^2/2 = u^3/3 - u^4/4 + ...
    // The series branch avoids the catastrophic cancellation of the closed
    // form for large mu and matches it to machine precision at the switch.
    const double u = 1.0 / mu;
    if (u > 0.25) return 0.5 - mu + mu * mu * std::log1p(u);
    double r = 0.0;
    for (int k = 30; k >= 3; --k) {
        const double term = ((k & 1) ? 1.0 : -1.0) / double(k);
        r = term + u * r;
    }
    r *= u * u * u;
    return mu * mu * r;
}

double solve_mu(double N) {
    if (!(N > 0.0))
        throw std::invalid_argument("solve_mu: photon number must be positive");
    if (N > 0.5)
        throw std::invalid_argument("solve_mu: no equilibrium holds number " + std::to_string(N) +
                                    " > 1/2");
    if (N == 0.5) return 0.0;

    double lo = 0.0;           // equilibrium_number(lo) = 1/2 >= N
    double hi = 1.0;
    while (equilibrium_number(hi) > N) {
        hi *= 4.0;
        if (hi > 1e300) break;
    }
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (equilibrium_number(mid) >= N)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double onset_time_bound(double N_in) {
    if (!(N_in > 0.5))
        throw std::invalid_argument("onset_time_bound: requires N_in > 1/2, no guarantee otherwise");
    const double delta = 0.5 * (N_in - 0.5);
    // sqrt(1+delta) - 1 written as delta / (sqrt(1+delta) + 1) to stay
    // accurate as delta -> 0.
    const double root = delta / (std::sqrt(1.0 + delta) + 1.0);
    return 1.0 / (4.0 * root * root);
}

double persistence_floor(double t, double t_star, double n0_star) {
    if (!(t_star > 0.0) || !(t >= t_star))
        throw std::invalid_argument("persistence_floor: requires t >= t_star > 0");
    if (!(n0_star > 0.0))
        throw std::invalid_argument("persistence_floor: trace at onset must be positive");
    const double b = 1.0 / ((1.0 + 0.25 * t_star) * std::exp(2.0 * (t - t_star)) - 1.0);
    const double xhat = std::min(0.25 * t_star * n0_star, 1.0);
    return b * xhat;
}

double gronwall_constant(double p) {
    if (!(p >= 0.0)) throw std::invalid_argument("gronwall_constant: p must be >= 0");
    return p * (p + 3.0);
}

double entropy(const std::vector<double>& n, const Grid& grid, double floor) {
    if (!(floor > 0.0)) throw std::invalid_argument("entropy: floor must be positive");
    if (n.size() != grid.size()) throw std::invalid_argument("entropy: state does not match grid");
    double h = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = grid.centers[i];
        h += grid.widths[i] * (x * n[i] - x * x * std::log(std::max(n[i], floor)));
    }
    return h;
}

BoundEnvelopes BoundEnvelopes::from_initial(const std::vector<double>& n, const Grid& grid) {
    if (n.size() != grid.size())
        throw std::invalid_argument("BoundEnvelopes: state does not match grid");
    BoundEnvelopes env;
    double sup = 0.0;
    for (double v : n) sup = std::max(sup, v);
    if (sup > 0.0) env.tau1 = 4.0 / (sup * sup);
    double min_slope = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i)
        min_slope = std::min(min_slope, (n[i + 1] - n[i]) / grid.spacing(i));
    if (min_slope < 0.0) env.tau2 = 4.0 / (-min_slope);
    return env;
}

}  // namespace becsim
