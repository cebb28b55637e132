#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "becsim/grid.hpp"
#include "becsim/state.hpp"

namespace becsim {

struct Trajectory;  // solver.hpp

/// Two independent estimates of the limiting chemical-potential parameter,
/// cross-reported so no mu is ever claimed without a consistency check.
struct EquilibriumFit {
    double mu_from_number = 0.0;   ///< mu via the closed-form number relation
    double mu_from_profile = 0.0;  ///< mu via least squares on g(x) = x - x^2/n
    double mu_selected = 0.0;
    double discrepancy = 0.0;      ///< |mu_from_number - mu_from_profile|
    double profile_stddev = 0.0;   ///< weighted scatter of -g around mu_from_profile
    double residual_l1 = 0.0;      ///< weighted_l1(final state, n_mu_selected)
    std::string selected;          ///< which estimator won and why
};

/// Identifies the equilibrium n_mu closest to a final state. Cells with
/// n <= floor are excluded from the profile fit (x^2/n is ill-conditioned
/// there); remaining cells are weighted by width and by n.
EquilibriumFit fit(const State& final_state, double N_final, const Grid& grid,
                   double floor = 1e-6);

/// First output index whose weighted-L1 distance to n_{mu_selected} is below
/// tol, if any.
std::optional<std::size_t> convergence_time(const Trajectory& traj, const EquilibriumFit& fit,
                                            double tol, const Grid& grid);

}  // namespace becsim
