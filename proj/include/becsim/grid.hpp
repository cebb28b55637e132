#pragma once

#include <cstddef>
#include <vector>

namespace becsim {

/// Cell-centered finite-volume mesh on [epsilon, 1].
///
/// Interfaces run from epsilon to 1; states live at cell centers, fluxes at
/// interfaces, so that discrete budgets telescope. A grading ratio r > 1
/// makes cell widths grow geometrically away from epsilon, where the x^2
/// diffusion coefficient degenerates.
struct Grid {
    double epsilon = 0.0;
    double grading = 1.0;
    std::vector<double> interfaces;  ///< size M+1, interfaces[0] = epsilon, interfaces[M] = 1
    std::vector<double> centers;     ///< size M, midpoints of the cells
    std::vector<double> widths;      ///< size M, positive cell widths

    std::size_t size() const { return centers.size(); }

    /// Center-to-center distance across interface i+1 (between cells i and i+1).
    double spacing(std::size_t i) const { return centers[i + 1] - centers[i]; }

    double max_width() const;
};

/// Builds the mesh. grading = 1 gives a uniform mesh; grading > 1 grows
/// widths geometrically from the left so the region near epsilon is resolved.
Grid build_grid(double epsilon, std::size_t cells, double grading = 1.0);

/// Midpoint-rule approximation of the weighted integral of x^p * v(x) over
/// [epsilon, 1]. Exact for per-cell-constant integrands when p = 0.
double quad(const std::vector<double>& values, double weight_exponent, const Grid& grid);

}  // namespace becsim
