#include "becsim/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "becsim/diagnostics.hpp"
#include "becsim/model.hpp"
#include "becsim/solver.hpp"

namespace becsim {

EquilibriumFit fit(const State& final_state, double N_final, const Grid& grid, double floor) {
    if (final_state.n.size() != grid.size())
        throw std::invalid_argument("equilibrium fit: state does not match grid");
    if (!(N_final > 0.0) || N_final > 0.75)
        throw std::invalid_argument("equilibrium fit: photon number out of range");
    if (!(floor > 0.0)) throw std::invalid_argument("equilibrium fit: floor must be positive");

    EquilibriumFit f;
    f.mu_from_number = solve_mu(std::min(N_final, 0.5));

    // profile estimate: the constant -g minimizing sum w (g + mu)^2 over
    // cells above the floor, w = width * n
    double wsum = 0.0, gsum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (final_state.n[i] > floor) {
            const double x = grid.centers[i];
            const double g = x - x * x / final_state.n[i];
            const double w = grid.widths[i] * final_state.n[i];
            wsum += w;
            gsum += w * g;
        }
    }
    if (wsum == 0.0) throw std::runtime_error("equilibrium fit: all cells below floor (vacuum)");
    f.mu_from_profile = std::max(0.0, -gsum / wsum);

    double var = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (final_state.n[i] > floor) {
            const double x = grid.centers[i];
            const double g = x - x * x / final_state.n[i];
            const double w = grid.widths[i] * final_state.n[i];
            const double dev = g + f.mu_from_profile;
            var += w * dev * dev;
        }
    }
    f.profile_stddev = std::sqrt(var / wsum);
    f.discrepancy = std::abs(f.mu_from_number - f.mu_from_profile);

    const bool near_equilibrium = f.profile_stddev <= 0.1 * (1.0 + f.mu_from_profile);
    if (near_equilibrium) {
        f.mu_selected = f.mu_from_number;
        f.selected = "number (profile scatter small)";
    } else {
        f.mu_selected = f.mu_from_profile;
        f.selected = "profile (state not near equilibrium)";
    }

    std::vector<double> eq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        eq[i] = equilibrium_density(f.mu_selected, grid.centers[i]);
    f.residual_l1 = weighted_l1(final_state.n, eq, 0.0, grid);
    return f;
}

std::optional<std::size_t> convergence_time(const Trajectory& traj, const EquilibriumFit& fit,
                                            double tol, const Grid& grid) {
    if (!(tol > 0.0)) throw std::invalid_argument("convergence_time: tol must be positive");
    std::vector<double> eq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        eq[i] = equilibrium_density(fit.mu_selected, grid.centers[i]);
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        if (weighted_l1(traj.states[k].n, eq, 0.0, grid) < tol) return k;
    return std::nullopt;
}

}  // namespace becsim
