#pragma once

#include <string>
#include <vector>

#include "becsim/diagnostics.hpp"
#include "becsim/solver.hpp"

namespace becsim {

/// Shortest exact decimal rendering of a double (%.17g), so re-running a
/// command byte-reproduces every numeric output.
std::string format_double(double v);

/// One row per (output time, cell): columns t, x, n.
void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Grid& grid);

/// One row per output time with the BoundReport fields, plus the weighted-L1
/// residual to a reference profile when one is supplied.
void write_summary_csv(const std::string& path, const Trajectory& traj,
                       const std::vector<double>* eq_residual = nullptr);

/// Contraction columns t, d, d_plus, envelope.
void write_compare_csv(const std::string& path, const std::vector<double>& times,
                       const ContractionReport& rep);

void ensure_dir(const std::string& path);

bool files_identical(const std::string& a, const std::string& b);

}  // namespace becsim
