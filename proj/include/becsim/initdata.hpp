#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "becsim/grid.hpp"
#include "becsim/model.hpp"
#include "becsim/state.hpp"

namespace becsim {

/// Named analytic families plus tabulated data for the initial density.
struct InitialSpec {
    enum class Family { constant, linear, scaled_equilibrium, bump, table };

    Family family = Family::constant;
    double c = 1.0;                                   // constant(c)
    double a = 1.0;                                   // linear: a*x; scaled_equilibrium: a * x^2/(x+mu)
    double mu = 0.0;                                  // scaled_equilibrium
    double center = 0.5, width = 0.25, height = 1.0;  // bump
    std::vector<std::pair<double, double>> table;     // strictly increasing x

    double kappa = 0.0;  ///< mollification parameter; 0 means raw sampling
    double p = 0.0;      ///< admissibility weight exponent

    static InitialSpec constant(double c);
    static InitialSpec linear(double a);
    static InitialSpec scaled_equilibrium(double a, double mu);
    static InitialSpec bump(double center, double width, double height);
    static InitialSpec from_table(std::vector<std::pair<double, double>> points);
    static InitialSpec from_csv(const std::string& path);

    /// Pointwise evaluation of the raw family on (0,1].
    double eval_raw(double x) const;

    void validate() const;
};

/// Raw pointwise sampling of the family at cell centers.
State sample_raw(const InitialSpec& spec, const Grid& grid);

/// Regularized initial data: smooth, strictly positive on (0,1], with
/// n(x) = kappa x^2 below x = kappa and n(x) = kappa x^2/(kappa x + 1)
/// above x = 1 - kappa, via
///   x^p n(x) = int_{2k}^{1-2k} rho_k(x - y) y^p n_raw(y) dy
///              + kappa x^{2+p} / (1 + kappa x chi(4x - 2)).
class Mollified {
  public:
    explicit Mollified(const InitialSpec& spec);

    double value(double x) const;
    double derivative(double x) const;
    /// Flux of the mollified profile without cutoff: x^2 n' + n^2 - 2 x n.
    double target_flux(double x) const;

    double kappa() const { return kappa_; }

  private:
    InitialSpec spec_;
    double kappa_ = 0.0;
    double weight_p_ = 0.0;

    void convolution(double x, double* val, double* der) const;
};

/// Mollified data sampled at cell centers.
State mollify(const InitialSpec& spec, const Grid& grid);

/// Dispatch: mollify when kappa > 0, raw sampling otherwise.
State initial_state(const InitialSpec& spec, const Grid& grid);

/// Result of the flux-cutoff compatibility adjustment, keeping the fine
/// integration path on the strip [1-2h, 1] for verification.
struct CutoffAdjustment {
    State state;                 ///< input state with the strip replaced
    std::vector<double> path_x;  ///< fine nodes covering [1-2h, 1]
    std::vector<double> path_n;  ///< adjusted density along the path
};

/// Adjusts a state on the strip [1-2h, 1] so that its cutoff flux at t = 0
/// equals the given un-cutoff target flux: integrates
///   x^2 n' = J_target(x) + 2 x n - n^2 - (3n - n^2) chi_h(x)
/// rightward from 1-2h with classical 4th-order steps (substeps per cell).
CutoffAdjustment cutoff_compatible_detail(const State& state, const CutoffProfile& profile,
                                          const Grid& grid,
                                          const std::function<double(double)>& target_flux,
                                          int substeps_per_cell = 16);

/// Convenience wrapper taking the target flux from the mollified profile.
State cutoff_compatible(const State& state, const CutoffProfile& profile, const Grid& grid,
                        const Mollified& source);

}  // namespace becsim
