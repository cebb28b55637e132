#pragma once

#include <optional>
#include <string>
#include <vector>

#include "becsim/config.hpp"
#include "becsim/equilibrium.hpp"
#include "becsim/solver.hpp"

namespace becsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverAbort = 3;

struct CheckStatus {
    std::string name;
    std::string status;  ///< pass | warn | fail
    double value = 0.0;
    double threshold = 0.0;
};

/// Everything produced by one simulation: mesh, trajectory, envelopes, the
/// standard per-run checks, and the discretization tolerance in force.
struct RunArtifacts {
    Grid grid;
    State initial;
    BoundEnvelopes env;
    Trajectory traj;
    DiscTol tol;
    double N0 = 0.0;
    std::vector<CheckStatus> checks;
    std::optional<EquilibriumFit> fit;
};

/// Builds grid and initial data from the config and integrates to t_end,
/// evaluating the standard bound checks afterwards.
RunArtifacts simulate(const RunConfig& rc, double tol_scale = 1.0);

/// Initial state for a config (mollified when kappa > 0, with the optional
/// cutoff-compatibility adjustment).
State build_initial(const RunConfig& rc, const InitialSpec& spec, const Grid& grid);

bool all_checks_pass(const std::vector<CheckStatus>& checks);

/// --out-dir flag, else BECSIM_OUT_DIR, else ./becsim_out.
std::string resolve_out_dir(const std::string& flag_value);

int cmd_run(const std::string& cfg_path, const std::string& out_dir, double tol_scale);
int cmd_compare(const std::string& cfg_path, const std::string& out_dir, double tol_scale);
int cmd_sweep(const std::string& cfg_path, const std::string& out_dir, double tol_scale, int jobs);
int cmd_verify(bool full, const std::string& out_dir, double tol_scale);

}  // namespace becsim
