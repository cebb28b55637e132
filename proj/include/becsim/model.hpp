#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "becsim/grid.hpp"

namespace becsim {

// --- Fluxes -----------------------------------------------------------------

/// Pointwise flux J = x^2 dn/dx + n^2 - 2 x n (sign convention: dn/dt = dJ/dx).
double flux_pointwise(double n, double dn_dx, double x);

/// Interface flux used by the scheme: diffusive part x^2 dn/dx plus a
/// Rusanov (local Lax-Friedrichs) evaluation of the convective part
/// n^2 - 2 x n, with wave-speed bound max(|2 n_left - 2x|, |2 n_right - 2x|).
double flux_model(double n_left, double n_right, double x, double dn_dx);

// --- Mollifier kernel and cutoff profile -------------------------------------

/// Normalized C-infinity bump exp(-1/(1-u^2)) on (-1,1), unit mass.
double bump(double u);
/// Derivative of the normalized bump.
double bump_derivative(double u);
/// chi(u) = integral of the bump from -infinity to u; 0 below -1, 1 above 1.
double bump_cdf(double u);

/// Smooth cutoff of the nonlinear flux terms near x = 1.
///
/// chi_h(x) = chi(1 + (x-1)/h) vanishes for x < 1-2h and equals 1 at x = 1.
/// The chi used is replaceable so degenerate profiles can be constructed in
/// tests; the default is the bump integral above.
struct CutoffProfile {
    double h = 0.1;
    std::function<double(double)> chi;  ///< nondecreasing, 0 below -1, 1 above 1

    static CutoffProfile bump_integral(double h);

    double chi_h(double x) const { return chi(1.0 + (x - 1.0) / h); }
};

/// Cutoff flux J_h = x^2 dn/dx - 2 x n + n^2 + (3n - n^2) chi_h(x).
/// At x = 1 this reduces to x^2 dn/dx + n, so J_h = 0 becomes the linear
/// Robin condition dn/dx = -n there.
double cutoff_flux(double n, double dn_dx, double x, const CutoffProfile& profile);

// --- Barriers and closed-form constants ---------------------------------------

/// Universal pointwise upper barrier S(x, t + tau1), S(x,t) = x + (1-x)/t + 2/sqrt(t).
double supersolution(double x, double t, double tau1);

/// Equilibrium family n_mu(x) = x^2 / (x + mu), mu >= 0.
double equilibrium_density(double mu, double x);

/// Photon number of n_mu: N(mu) = 1/2 - mu + mu^2 log(1 + 1/mu); N(0) = 1/2.
/// Evaluated in a cancellation-free form so it is accurate for all mu.
double equilibrium_number(double mu);

/// Inverse of equilibrium_number by bisection on the strictly decreasing map.
/// Valid for N in (0, 1/2]; N > 1/2 has no equilibrium and is rejected.
double solve_mu(double N);

/// Upper bound on the condensation onset time for initial number N_in > 1/2:
/// t* = 1/(4 (sqrt(1+delta) - 1)^2) with delta = (N_in - 1/2)/2.
double onset_time_bound(double N_in);

/// Lower bound on the boundary trace after onset: b(t) * xhat with
/// b(t) = ((1 + t*/4) e^{2(t - t*)} - 1)^{-1}, xhat = min(t* n0* / 4, 1).
double persistence_floor(double t, double t_star, double n0_star);

/// Growth constant c_p = p (p + 3) of the weighted-L1 stability estimate.
double gronwall_constant(double p);

/// Quantum entropy H[n] = integral of x n - x^2 log(max(n, floor)).
double entropy(const std::vector<double>& n, const Grid& grid, double floor);

// --- Bound envelopes ----------------------------------------------------------

/// Time shifts entering the super-solution and Oleinik envelopes.
///
/// tau1 = 4 / (sup n_in)^2 (infinite for zero data), so S(x, tau1) dominates
/// the initial state. tau2 = 4 / max(0, -inf slope(n_in)), infinite when the
/// initial data is nondecreasing.
struct BoundEnvelopes {
    double tau1 = std::numeric_limits<double>::infinity();
    double tau2 = std::numeric_limits<double>::infinity();

    static BoundEnvelopes from_initial(const std::vector<double>& n, const Grid& grid);
};

}  // namespace becsim
