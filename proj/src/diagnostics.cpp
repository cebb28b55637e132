#include "becsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "becsim/solver.hpp"

namespace becsim {

namespace {

void check_shapes(const std::vector<double>& a, const std::vector<double>& b, const Grid& grid,
                  const char* what) {
    if (a.size() != b.size() || a.size() != grid.size())
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

double weighted_l1(const std::vector<double>& a, const std::vector<double>& b, double p,
                   const Grid& grid) {
    check_shapes(a, b, grid, "weighted_l1");
    double s = 0.0;
    if (p == 0.0) {
        for (std::size_t i = 0; i < a.size(); ++i) s += grid.widths[i] * std::abs(a[i] - b[i]);
    } else {
        for (std::size_t i = 0; i < a.size(); ++i)
            s += grid.widths[i] * std::pow(grid.centers[i], p) * std::abs(a[i] - b[i]);
    }
    return s;
}

double weighted_l1_pos(const std::vector<double>& a, const std::vector<double>& b, double p,
                       const Grid& grid) {
    check_shapes(a, b, grid, "weighted_l1_pos");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d > 0.0) s += grid.widths[i] * (p == 0.0 ? 1.0 : std::pow(grid.centers[i], p)) * d;
    }
    return s;
}

BoundCheck check_bounds(const std::vector<double>& n, double t, const BoundEnvelopes& env,
                        const Grid& grid) {
    if (n.size() != grid.size()) throw std::invalid_argument("check_bounds: shape mismatch");
    BoundCheck out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double excess = n[i] - supersolution(grid.centers[i], t, env.tau1);
        out.sup_violation = std::max(out.sup_violation, excess);
    }
    const double envelope = std::isinf(env.tau2) ? 0.0 : 4.0 / (t + env.tau2);
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        const double slope = (n[i + 1] - n[i]) / grid.spacing(i);
        out.oleinik_violation = std::max(out.oleinik_violation, -slope - envelope);
    }
    out.sup_violation = std::max(out.sup_violation, 0.0);
    out.oleinik_violation = std::max(out.oleinik_violation, 0.0);
    return out;
}

double dissipation_functional(const std::vector<double>& n, const Grid& grid) {
    if (n.size() != grid.size())
        throw std::invalid_argument("dissipation_functional: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) s += grid.widths[i] * n[i] * n[i];
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        const double h = grid.spacing(i);
        const double slope = (n[i + 1] - n[i]) / h;
        const double x = grid.interfaces[i + 1];
        s += h * x * x * slope * slope;
    }
    return s;
}

double check_energy(const Trajectory& traj, std::size_t s_index, std::size_t t_index,
                    const Grid& grid) {
    if (s_index >= t_index || t_index >= traj.states.size())
        throw std::invalid_argument("check_energy: bad index pair");
    auto l2sq = [&grid](const std::vector<double>& n) {
        double s = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) s += grid.widths[i] * n[i] * n[i];
        return s;
    };
    double dissipated = 0.0;
    for (std::size_t k = s_index; k < t_index; ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        dissipated += 0.5 * dt *
                      (dissipation_functional(traj.states[k].n, grid) +
                       dissipation_functional(traj.states[k + 1].n, grid));
    }
    const double span = traj.times[t_index] - traj.times[s_index];
    return l2sq(traj.states[s_index].n) + 8.0 / 3.0 * span - l2sq(traj.states[t_index].n) -
           dissipated;
}

double min_pair_energy_slack(const Trajectory& traj) {
    // slack over (s, t) telescopes through the consecutive slacks, so the
    // minimum over all pairs is a min-subarray scan of the prefix sums
    double prefix = 0.0, max_prefix = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.reports.size(); ++k) {
        prefix += traj.reports[k].energy_slack;
        worst = std::min(worst, prefix - max_prefix);
        max_prefix = std::max(max_prefix, prefix);
    }
    return traj.reports.size() < 2 ? 0.0 : worst;
}

ContractionReport check_contraction(const Trajectory& a, const Trajectory& b, double p,
                                    const Grid& grid, double tol) {
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("check_contraction: trajectories have different output times");
    ContractionReport rep;
    const double cp = gronwall_constant(p);
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        if (std::abs(a.times[k] - b.times[k]) > 1e-12)
            throw std::invalid_argument("check_contraction: output times differ");
        rep.d.push_back(weighted_l1(a.states[k].n, b.states[k].n, p, grid));
        rep.d_plus.push_back(weighted_l1_pos(a.states[k].n, b.states[k].n, p, grid));
    }
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        const double env = std::exp(cp * a.times[k]) * rep.d_plus.front();
        rep.envelope.push_back(env);
        if (rep.d_plus[k] > env * (1.0 + 1e-9) + tol) rep.comparison_ok = false;
        if (p == 0.0 && k > 0 && rep.d[k] > rep.d[k - 1] + tol) rep.l1_nonincreasing = false;
    }
    rep.initial_distance = rep.d.front();
    rep.final_distance = rep.d.back();
    return rep;
}

std::optional<std::size_t> onset_detect(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("onset_detect: threshold must be positive");
    for (std::size_t k = 0; k < traj.reports.size(); ++k)
        if (traj.reports[k].n_eps > threshold) return k;
    return std::nullopt;
}

PersistenceReport check_persistence(const Trajectory& traj, std::size_t onset_index, double tol) {
    if (onset_index >= traj.reports.size())
        throw std::invalid_argument("check_persistence: onset index out of range");
    const double t_star = traj.times[onset_index];
    const double n0_star = traj.reports[onset_index].n_eps;
    if (!(t_star > 0.0) || !(n0_star > 0.0))
        throw std::invalid_argument("check_persistence: no usable onset trace");
    PersistenceReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = onset_index; k < traj.reports.size(); ++k) {
        const double floor = persistence_floor(traj.times[k], t_star, n0_star);
        const double margin = traj.reports[k].n_eps - floor;
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -tol) rep.ok = false;
    }
    return rep;
}

double extrapolate_origin(const std::vector<double>& n, const Grid& grid) {
    if (n.size() < 3) throw std::invalid_argument("extrapolate_origin: need at least 3 cells");
    const double x0 = grid.centers[0], x1 = grid.centers[1], x2 = grid.centers[2];
    const double l0 = (0.0 - x1) * (0.0 - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (0.0 - x0) * (0.0 - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (0.0 - x0) * (0.0 - x1) / ((x2 - x0) * (x2 - x1));
    return std::max(0.0, l0 * n[0] + l1 * n[1] + l2 * n[2]);
}

double eval_state(const std::vector<double>& n, const Grid& grid, double x) {
    if (n.size() != grid.size()) throw std::invalid_argument("eval_state: shape mismatch");
    const auto& c = grid.centers;
    if (x <= c.front()) return n.front();
    if (x >= c.back()) return n.back();
    const auto it = std::upper_bound(c.begin(), c.end(), x);
    const std::size_t i = std::size_t(it - c.begin());
    const double w = (x - c[i - 1]) / (c[i] - c[i - 1]);
    return n[i - 1] + w * (n[i] - n[i - 1]);
}

double cross_grid_l1(const std::vector<double>& a, const Grid& ga, const std::vector<double>& b,
                     const Grid& gb, std::size_t samples) {
    const double lo = std::max(ga.epsilon, gb.epsilon);
    const double hi = 1.0;
    const double dx = (hi - lo) / double(samples);
    double s = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = lo + (double(j) + 0.5) * dx;
        s += std::abs(eval_state(a, ga, x) - eval_state(b, gb, x));
    }
    return s * dx;
}

}  // namespace becsim
