#include "becsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace becsim {

void SolverConfig::validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("solver: t_end must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("solver: cfl must lie in (0, 1]");
    if (!(dt_max > 0.0)) throw std::invalid_argument("solver: dt_max must be positive");
    if (!(theta >= 0.5 && theta <= 1.0))
        throw std::invalid_argument("solver: theta must lie in [0.5, 1]");
    if (!(output_every > 0.0)) throw std::invalid_argument("solver: output_every must be positive");
    if (mode == Mode::cutoff && !(cutoff_h > 0.0 && cutoff_h < 0.5))
        throw std::invalid_argument("solver: cutoff width must lie in (0, 0.5)");
}

namespace {

constexpr double kSpeedGuard = 1e-12;

/// Reusable one-step integrator; owns the workspace and the flux ledger.
class Stepper {
  public:
    Stepper(const Grid& grid, const SolverConfig& cfg) : g_(grid), cfg_(cfg) {
        const std::size_t m = g_.size();
        diff_coef_.assign(m + 1, 0.0);
        for (std::size_t i = 1; i < m; ++i) {
            const double xi = g_.interfaces[i];
            diff_coef_[i] = xi * xi / g_.spacing(i - 1);
        }
        chi_if_.assign(m + 1, 0.0);
        chi_c_.assign(m, 0.0);
        if (cfg_.mode == SolverConfig::Mode::cutoff) {
            const CutoffProfile prof = CutoffProfile::bump_integral(cfg_.cutoff_h);
            for (std::size_t i = 0; i <= m; ++i) chi_if_[i] = prof.chi_h(g_.interfaces[i]);
            for (std::size_t i = 0; i < m; ++i) chi_c_[i] = prof.chi_h(g_.centers[i]);
        }
        conv_.assign(m + 1, 0.0);
        dstar_.assign(m + 1, 0.0);
        rhs_.resize(m);
        nstar_.resize(m);
        cprime_.resize(m);
    }

    double suggest_dt(const std::vector<double>& n) const {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n.size(); ++i) {
            const double x = g_.centers[i];
            const double alpha = std::abs(2.0 * n[i] - 2.0 * x) +
                                 std::abs(3.0 - 2.0 * n[i]) * chi_c_[i] + kSpeedGuard;
            worst = std::min(worst, g_.widths[i] / alpha);
        }
        return std::min(cfg_.dt_max, cfg_.cfl * worst);
    }

    /// Advances n by dt in place. The final update is applied in flux form so
    /// the photon balance against the ledger telescopes to machine precision.
    void advance(std::vector<double>& n, double t, double dt) {
        const std::size_t m = n.size();
        const double theta = cfg_.theta;

        // Explicit convective interface fluxes (Rusanov on the convective part,
        // with the cutoff term in cutoff mode). The left boundary carries the
        // whole outflow flux J = n_1^2, upwinded from the first cell; the
        // right boundary carries J = 0.
        const double drain = n[0] * n[0];
        conv_[0] = drain;
        conv_[m] = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            const double x = g_.interfaces[i];
            const double chi = chi_if_[i];
            const double nl = n[i - 1], nr = n[i];
            const double gl = nl * nl - 2.0 * x * nl + (3.0 * nl - nl * nl) * chi;
            const double gr = nr * nr - 2.0 * x * nr + (3.0 * nr - nr * nr) * chi;
            const double al = std::abs(2.0 * nl - 2.0 * x + (3.0 - 2.0 * nl) * chi);
            const double ar = std::abs(2.0 * nr - 2.0 * x + (3.0 - 2.0 * nr) * chi);
            const double alpha = std::max(al, ar);
            conv_[i] = 0.5 * (gl + gr) + 0.5 * alpha * (nr - nl);
        }

        // rhs of the theta-implicit diffusion solve
        for (std::size_t i = 0; i < m; ++i) {
            double incr = conv_[i + 1] - conv_[i];
            if (theta < 1.0) {
                const double dl = (i > 0) ? diff_coef_[i] * (n[i] - n[i - 1]) : 0.0;
                const double dr = (i + 1 < m) ? diff_coef_[i + 1] * (n[i + 1] - n[i]) : 0.0;
                incr += (1.0 - theta) * (dr - dl);
            }
            rhs_[i] = n[i] + dt / g_.widths[i] * incr;
        }

        // Tridiagonal solve (I - theta dt L) n* = rhs; strictly diagonally
        // dominant M-matrix, Thomas without pivoting.
        {
            const double c0 = theta * dt;
            double diag = 1.0 + c0 * (diff_coef_[0] + diff_coef_[1]) / g_.widths[0];
            cprime_[0] = -c0 * diff_coef_[1] / g_.widths[0] / diag;
            nstar_[0] = rhs_[0] / diag;
            for (std::size_t i = 1; i < m; ++i) {
                const double lower = -c0 * diff_coef_[i] / g_.widths[i];
                const double upper = (i + 1 <= m) ? -c0 * diff_coef_[i + 1] / g_.widths[i] : 0.0;
                diag = 1.0 + c0 * (diff_coef_[i] + diff_coef_[i + 1]) / g_.widths[i];
                const double denom = diag - lower * cprime_[i - 1];
                cprime_[i] = upper / denom;
                nstar_[i] = (rhs_[i] - lower * nstar_[i - 1]) / denom;
            }
            for (std::size_t i = m - 1; i-- > 0;) nstar_[i] -= cprime_[i] * nstar_[i + 1];
        }

        // Realized diffusive interface fluxes at the theta level
        dstar_[0] = 0.0;
        dstar_[m] = 0.0;
        for (std::size_t i = 1; i < m; ++i)
            dstar_[i] = diff_coef_[i] * (theta * (nstar_[i] - nstar_[i - 1]) +
                                         (1.0 - theta) * (n[i] - n[i - 1]));

        // Flux-form update, then clip undershoots at zero
        for (std::size_t i = 0; i < m; ++i) {
            const double jr = conv_[i + 1] + dstar_[i + 1];
            const double jl = conv_[i] + dstar_[i];
            double v = n[i] + dt / g_.widths[i] * (jr - jl);
            if (!std::isfinite(v))
                throw SolverAbort("solver: state became non-finite", t);
            if (v < 0.0) {
                clip_total_ += -v * g_.widths[i];
                v = 0.0;
            }
            n[i] = v;
        }

        // Ledger accumulates exactly the boundary flux the update used
        // (Neumaier-compensated so long runs stay exact).
        const double inc = dt * drain;
        const double s = ledger_ + inc;
        if (std::abs(ledger_) >= std::abs(inc))
            ledger_comp_ += (ledger_ - s) + inc;
        else
            ledger_comp_ += (inc - s) + ledger_;
        ledger_ = s;
    }

    double ledger() const { return ledger_ + ledger_comp_; }
    double clip_total() const { return clip_total_; }

  private:
    const Grid& g_;
    SolverConfig cfg_;
    std::vector<double> diff_coef_;  // x^2 / spacing at interfaces, 0 at boundaries
    std::vector<double> chi_if_, chi_c_;
    std::vector<double> conv_, dstar_, rhs_, nstar_, cprime_;
    double ledger_ = 0.0, ledger_comp_ = 0.0;
    double clip_total_ = 0.0;
};

void check_initial(const State& initial, const Grid& grid) {
    if (initial.n.size() != grid.size())
        throw std::invalid_argument("run: initial state does not match grid");
    for (double v : initial.n)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("run: initial state must be finite and nonnegative");
}

std::vector<double> output_times(const SolverConfig& cfg) {
    std::vector<double> out{0.0};
    for (std::size_t k = 1;; ++k) {
        const double t = double(k) * cfg.output_every;
        if (t >= cfg.t_end - 1e-12) break;
        out.push_back(t);
    }
    out.push_back(cfg.t_end);
    return out;
}

double quad_sq(const std::vector<double>& n, const Grid& grid) {
    double s = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) s += grid.widths[i] * n[i] * n[i];
    return s;
}

void record_output(Trajectory& traj, const State& s, const Grid& grid,
                   const BoundEnvelopes& env, double ledger, double clip) {
    BoundReport rep;
    rep.t = s.t;
    rep.N = quad(s.n, 0.0, grid);
    rep.ledger = ledger;
    const BoundCheck bc = check_bounds(s.n, s.t, env, grid);
    rep.sup_violation = bc.sup_violation;
    rep.oleinik_violation = bc.oleinik_violation;
    double nmax = 0.0;
    for (double v : s.n) nmax = std::max(nmax, v);
    rep.entropy = entropy(s.n, grid, nmax > 0.0 ? 1e-30 * nmax : 1e-30);
    rep.n_eps = s.n.front();
    rep.clip_mass = clip;
    rep.energy_slack = 0.0;
    if (!traj.states.empty()) {
        const State& prev = traj.states.back();
        const double dt_out = s.t - prev.t;
        const double dis_prev = dissipation_functional(prev.n, grid);
        const double dis_cur = dissipation_functional(s.n, grid);
        rep.energy_slack = quad_sq(prev.n, grid) + 8.0 / 3.0 * dt_out - quad_sq(s.n, grid) -
                           0.5 * dt_out * (dis_prev + dis_cur);
    }
    traj.times.push_back(s.t);
    traj.states.push_back(s);
    traj.ledger.push_back(ledger);
    traj.reports.push_back(rep);
}

}  // namespace

double adaptive_dt(const State& state, const Grid& grid, const SolverConfig& config) {
    config.validate();
    if (state.n.size() != grid.size())
        throw std::invalid_argument("adaptive_dt: state does not match grid");
    Stepper st(grid, config);
    return st.suggest_dt(state.n);
}

State step(const State& state, double t, double dt, const Grid& grid, const SolverConfig& config) {
    config.validate();
    if (state.n.size() != grid.size())
        throw std::invalid_argument("step: state does not match grid");
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    Stepper st(grid, config);
    State out = state;
    st.advance(out.n, t, dt);
    out.t = t + dt;
    return out;
}

Trajectory run(const State& initial, const Grid& grid, const SolverConfig& config,
               const BoundEnvelopes& envelopes) {
    config.validate();
    check_initial(initial, grid);

    Stepper st(grid, config);
    State s = initial;
    s.t = 0.0;

    Trajectory traj;
    record_output(traj, s, grid, envelopes, 0.0, 0.0);

    const std::vector<double> outs = output_times(config);
    for (std::size_t k = 1; k < outs.size(); ++k) {
        const double target = outs[k];
        while (s.t < target - 1e-13) {
            double dt = st.suggest_dt(s.n);
            bool landed = false;
            if (s.t + dt >= target - 1e-13) {
                dt = target - s.t;
                landed = true;
            }
            st.advance(s.n, s.t, dt);
            ++traj.steps;
            traj.max_dt = std::max(traj.max_dt, dt);
            s.t = landed ? target : s.t + dt;
        }
        s.t = target;
        record_output(traj, s, grid, envelopes, st.ledger(), st.clip_total());
    }
    traj.clip_total = st.clip_total();
    return traj;
}

std::pair<Trajectory, Trajectory> run_pair(const State& a, const State& b, const Grid& grid,
                                           const SolverConfig& config, const BoundEnvelopes& env_a,
                                           const BoundEnvelopes& env_b) {
    config.validate();
    check_initial(a, grid);
    check_initial(b, grid);

    Stepper sta(grid, config), stb(grid, config);
    State sa = a, sb = b;
    sa.t = sb.t = 0.0;

    Trajectory ta, tb;
    record_output(ta, sa, grid, env_a, 0.0, 0.0);
    record_output(tb, sb, grid, env_b, 0.0, 0.0);

    const std::vector<double> outs = output_times(config);
    double t = 0.0;
    for (std::size_t k = 1; k < outs.size(); ++k) {
        const double target = outs[k];
        while (t < target - 1e-13) {
            double dt = std::min(sta.suggest_dt(sa.n), stb.suggest_dt(sb.n));
            bool landed = false;
            if (t + dt >= target - 1e-13) {
                dt = target - t;
                landed = true;
            }
            sta.advance(sa.n, t, dt);
            stb.advance(sb.n, t, dt);
            ++ta.steps;
            ++tb.steps;
            ta.max_dt = std::max(ta.max_dt, dt);
            tb.max_dt = ta.max_dt;
            t = landed ? target : t + dt;
        }
        t = target;
        sa.t = sb.t = t;
        record_output(ta, sa, grid, env_a, sta.ledger(), sta.clip_total());
        record_output(tb, sb, grid, env_b, stb.ledger(), stb.clip_total());
    }
    ta.clip_total = sta.clip_total();
    tb.clip_total = stb.clip_total();
    return {std::move(ta), std::move(tb)};
}

RefineStudy refine_study(const InitialSpec& spec, double epsilon, double grading,
                         std::size_t base_cells, std::size_t levels, const SolverConfig& config) {
    if (levels < 2) throw std::invalid_argument("refine_study: need at least 2 levels");

    RefineStudy study;
    std::vector<Grid> grids;
    std::vector<State> finals;
    for (std::size_t lev = 0; lev < levels; ++lev) {
        const std::size_t m = base_cells << lev;
        // r -> sqrt(r) per level keeps the meshes nested (every second
        // interface of the fine mesh coincides with a coarse interface)
        const double r = std::pow(grading, 1.0 / double(std::size_t(1) << lev));
        Grid g = build_grid(epsilon, m, r);
        SolverConfig cfg = config;
        cfg.dt_max = config.dt_max / double(std::size_t(1) << lev);
        const State init = initial_state(spec, g);
        const BoundEnvelopes env = BoundEnvelopes::from_initial(init.n, g);
        Trajectory traj = run(init, g, cfg, env);
        study.cells.push_back(m);
        grids.push_back(std::move(g));
        finals.push_back(traj.final_state());
    }

    for (std::size_t lev = 0; lev + 1 < levels; ++lev) {
        const Grid& coarse = grids[lev];
        const Grid& fine = grids[lev + 1];
        std::vector<double> restricted(coarse.size());
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            const double w0 = fine.widths[2 * i], w1 = fine.widths[2 * i + 1];
            restricted[i] =
                (w0 * finals[lev + 1].n[2 * i] + w1 * finals[lev + 1].n[2 * i + 1]) / (w0 + w1);
        }
        study.differences.push_back(weighted_l1(restricted, finals[lev].n, spec.p, coarse));
    }
    for (std::size_t j = 0; j + 1 < study.differences.size(); ++j)
        study.orders.push_back(std::log2(study.differences[j] / study.differences[j + 1]));
    return study;
}

}  // namespace becsim
