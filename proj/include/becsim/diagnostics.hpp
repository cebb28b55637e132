#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "becsim/grid.hpp"
#include "becsim/model.hpp"

namespace becsim {

struct Trajectory;  // solver.hpp

/// Per-output-time verification record: conserved quantities and the
/// violation magnitudes of the proved bounds (all clamped at zero).
struct BoundReport {
    double t = 0.0;
    double N = 0.0;                  ///< photon number over [epsilon, 1]
    double ledger = 0.0;             ///< cumulative condensate mass through the left boundary
    double sup_violation = 0.0;      ///< max (n - S(x, t + tau1))_+
    double oleinik_violation = 0.0;  ///< max (-slope - 4/(t + tau2))_+
    double energy_slack = 0.0;       ///< RHS - LHS of the energy inequality since last report
    double entropy = 0.0;            ///< H[n]
    double n_eps = 0.0;              ///< first-cell trace
    double clip_mass = 0.0;          ///< cumulative mass clipped away at zero
};

/// Calibration constant for the discretization-aware tolerance
/// tol_disc = C (dx_max + dt_max); fixed once on the equilibrium-preservation
/// run, inequalities against discrete solutions are tested up to it.
inline constexpr double kTolDiscC = 8.0;

/// Discretization-aware tolerance for continuum inequalities.
struct DiscTol {
    double dx = 0.0;
    double dt = 0.0;
    double scale = 1.0;
    double value() const { return scale * kTolDiscC * (dx + dt); }
};

/// Weighted L1 distance: quad of x^p |a - b|.
double weighted_l1(const std::vector<double>& a, const std::vector<double>& b, double p,
                   const Grid& grid);

/// Positive-part distance: quad of x^p (a - b)_+.
double weighted_l1_pos(const std::vector<double>& a, const std::vector<double>& b, double p,
                       const Grid& grid);

struct BoundCheck {
    double sup_violation = 0.0;
    double oleinik_violation = 0.0;
};

/// Super-solution and Oleinik violation magnitudes at time t.
BoundCheck check_bounds(const std::vector<double>& n, double t, const BoundEnvelopes& env,
                        const Grid& grid);

/// n^2 + x^2 (dn/dx)^2 integrated with the same interface slopes the solver
/// dissipates, so the energy inequality is checked against the scheme's own
/// dissipation.
double dissipation_functional(const std::vector<double>& n, const Grid& grid);

/// Energy-inequality slack RHS - LHS over [times[s_index], times[t_index]],
/// with trapezoid-in-time for the dissipation integral. Nonnegative up to
/// discretization error.
double check_energy(const Trajectory& traj, std::size_t s_index, std::size_t t_index,
                    const Grid& grid);

/// Minimum of the energy slack over all output pairs s < t.
double min_pair_energy_slack(const Trajectory& traj);

/// Distances between two trajectories on the same grid and output times.
struct ContractionReport {
    std::vector<double> d;         ///< weighted L1 distance per output time
    std::vector<double> d_plus;    ///< one-sided positive-part distance
    std::vector<double> envelope;  ///< e^{c_p t} d_plus(0)
    bool comparison_ok = true;     ///< d_plus stayed within the Gronwall envelope
    bool l1_nonincreasing = true;  ///< p = 0 only: d never increased beyond tol
    double initial_distance = 0.0;
    double final_distance = 0.0;
};

ContractionReport check_contraction(const Trajectory& a, const Trajectory& b, double p,
                                    const Grid& grid, double tol);

/// First output index with n_eps > threshold, if any.
std::optional<std::size_t> onset_detect(const Trajectory& traj, double threshold);

struct PersistenceReport {
    bool ok = true;
    double worst_margin = 0.0;  ///< min over later outputs of n_eps - floor
};

/// Verifies n_eps(t) >= persistence_floor(t, t*, n0*) - tol after onset.
PersistenceReport check_persistence(const Trajectory& traj, std::size_t onset_index, double tol);

/// Quadratic extrapolation of the first three cells to x = 0 (diagnostic
/// only; the ledger always uses the actual discrete boundary flux).
double extrapolate_origin(const std::vector<double>& n, const Grid& grid);

/// Piecewise-linear evaluation of cell-center samples at x (clamped).
double eval_state(const std::vector<double>& n, const Grid& grid, double x);

/// L1 distance between piecewise-linear reconstructions of two states on
/// possibly different meshes, integrated over the common domain.
double cross_grid_l1(const std::vector<double>& a, const Grid& ga, const std::vector<double>& b,
                     const Grid& gb, std::size_t samples = 4096);

}  // namespace becsim
