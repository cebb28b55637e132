#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "becsim/diagnostics.hpp"
#include "becsim/grid.hpp"
#include "becsim/initdata.hpp"
#include "becsim/model.hpp"
#include "becsim/state.hpp"

namespace becsim {

struct SolverConfig {
    double t_end = 1.0;
    double cfl = 0.5;          ///< Courant number for the explicit convective part
    double dt_max = 1e-3;      ///< cap on the step size
    double theta = 1.0;        ///< implicitness of the diffusion solve, [0.5, 1]
    double output_every = 0.1; ///< diagnostic cadence in time units

    enum class Mode { plain, cutoff };
    Mode mode = Mode::plain;
    double cutoff_h = 0.1;     ///< cutoff width in cutoff mode

    void validate() const;
};

/// Time-ordered states plus the condensate flux ledger and bound reports.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> ledger;        ///< cumulative int n(eps,tau)^2 dtau at each time
    std::vector<BoundReport> reports;
    double clip_total = 0.0;
    std::size_t steps = 0;
    double max_dt = 0.0;

    const State& final_state() const { return states.back(); }
};

struct SolverAbort : std::runtime_error {
    double t;
    SolverAbort(const std::string& msg, double when) : std::runtime_error(msg), t(when) {}
};

/// Stability-limited step: dt = min(dt_max, cfl * min_i dx_i / alpha_i) with
/// alpha_i = |2 n_i - 2 x_i| (+ cutoff term in cutoff mode) + small guard.
double adaptive_dt(const State& state, const Grid& grid, const SolverConfig& config);

/// One IMEX update: explicit Rusanov convection, theta-implicit tridiagonal
/// diffusion, boundary fluxes J = n_1^2 at the epsilon interface (upwind
/// outflow) and J = 0 at x = 1. Negative undershoots are clipped at zero.
State step(const State& state, double t, double dt, const Grid& grid, const SolverConfig& config);

/// Integrates to t_end, accumulating the ledger with the same boundary flux
/// the update uses, so the discrete photon balance telescopes exactly.
Trajectory run(const State& initial, const Grid& grid, const SolverConfig& config,
               const BoundEnvelopes& envelopes);

/// Runs two states side by side with a shared step sequence (the minimum of
/// the two stability bounds), which preserves the discrete comparison and
/// L1-contraction structure between them.
std::pair<Trajectory, Trajectory> run_pair(const State& a, const State& b, const Grid& grid,
                                           const SolverConfig& config, const BoundEnvelopes& env_a,
                                           const BoundEnvelopes& env_b);

/// Self-convergence table: runs at M, 2M, ... with nested geometric meshes
/// and halved dt caps, reporting successive weighted-L1 differences at t_end
/// and the observed order log2 of their ratios.
struct RefineStudy {
    std::vector<std::size_t> cells;
    std::vector<double> differences;
    std::vector<double> orders;
};

RefineStudy refine_study(const InitialSpec& spec, double epsilon, double grading,
                         std::size_t base_cells, std::size_t levels, const SolverConfig& config);

}  // namespace becsim
