#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "becsim/solver.hpp"
#include "oracles.hpp"

using namespace becsim;

namespace {

State equilibrium_samples(const Grid& g, double mu) {
    State s;
    s.n.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        s.n[i] = equilibrium_density(mu, g.centers[i]);
    return s;
}

}  // namespace

TEST_CASE("zero state is a fixed point") {
    const Grid g = build_grid(1e-3, 100, 1.02);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    State zero;
    zero.n.assign(g.size(), 0.0);
    const Trajectory traj = run(zero, g, cfg, BoundEnvelopes::from_initial(zero.n, g));
    for (const auto& st : traj.states)
        for (double v : st.n) CHECK(v == 0.0);
    CHECK(traj.ledger.back() == 0.0);
}

TEST_CASE("one step leaves equilibrium samples nearly unchanged") {
    const Grid g = build_grid(1e-3, 400, 1.02);
    SolverConfig cfg;
    const State eq = equilibrium_samples(g, 0.5);
    const State out = step(eq, 0.0, 1e-3, g, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(out.n[i] - eq.n[i]));
    CHECK(worst < 1e-5);
}

TEST_CASE("one step drains N by dt * n_1^2 exactly") {
    const Grid g = build_grid(1e-3, 400, 1.0);
    SolverConfig cfg;
    const State c2 = [&g] {
        State s;
        s.n.assign(g.size(), 2.0);
        return s;
    }();
    const double dt = 2e-4;
    const State out = step(c2, 0.0, dt, g, cfg);
    const double before = quad(c2.n, 0.0, g);
    const double after = quad(out.n, 0.0, g);
    CHECK(std::abs((before - after) - dt * 4.0) < 1e-13);
}

TEST_CASE("adaptive_dt degenerate speed gives dt_max") {
    const Grid g = build_grid(1e-3, 200, 1.02);
    SolverConfig cfg;
    cfg.dt_max = 0.37;
    State nx;
    nx.n.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) nx.n[i] = g.centers[i];
    CHECK(adaptive_dt(nx, g, cfg) == cfg.dt_max);
}

TEST_CASE("adaptive_dt matches the hand value for constant data") {
    // n = 2 on a uniform mesh with dx = (1 - eps)/400 ~ 1/400; the worst cell
    // sits near eps where alpha ~ 4, so dt = cfl dx / 4
    const Grid g = build_grid(1e-9, 400, 1.0);
    SolverConfig cfg;
    cfg.cfl = 0.5;
    cfg.dt_max = 1.0;
    State c2;
    c2.n.assign(g.size(), 2.0);
    const double dt = adaptive_dt(c2, g, cfg);
    CHECK(dt == doctest::Approx(0.5 * (1.0 / 400.0) / 4.0).epsilon(1e-6));
}

TEST_CASE("halving the widths halves dt when speed-limited") {
    SolverConfig cfg;
    cfg.dt_max = 1.0;
    const Grid g1 = build_grid(1e-6, 200, 1.0);
    const Grid g2 = build_grid(1e-6, 400, 1.0);
    State a, b;
    a.n.assign(g1.size(), 2.0);
    b.n.assign(g2.size(), 2.0);
    CHECK(adaptive_dt(b, g2, cfg) ==
          doctest::Approx(0.5 * adaptive_dt(a, g1, cfg)).epsilon(1e-6));
}

TEST_CASE("equilibrium data drifts little over t = 1") {
    const Grid g = build_grid(1e-3, 400, 1.02);
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.output_every = 0.25;
    const State eq = equilibrium_samples(g, 0.5);
    const Trajectory traj = run(eq, g, cfg, BoundEnvelopes::from_initial(eq.n, g));
    CHECK(weighted_l1(traj.final_state().n, eq.n, 0.0, g) < 2e-3);
}

TEST_CASE("run bookkeeping invariants on a condensing run") {
    const Grid g = build_grid(1e-3, 200, 1.0);
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.output_every = 0.1;
    State c2;
    c2.n.assign(g.size(), 2.0);
    const BoundEnvelopes env = BoundEnvelopes::from_initial(c2.n, g);
    const Trajectory traj = run(c2, g, cfg, env);

    const double N0 = traj.reports.front().N;
    for (std::size_t k = 0; k < traj.reports.size(); ++k) {
        const auto& r = traj.reports[k];
        CHECK(std::abs(r.N + r.ledger - N0) <= 1e-11 * (1.0 + N0));
        if (k > 0) {
            CHECK(traj.times[k] > traj.times[k - 1]);
            CHECK(traj.ledger[k] >= traj.ledger[k - 1]);
        }
        for (double v : traj.states[k].n) CHECK(v >= 0.0);
        // flat initial data stays nondecreasing (tau2 infinite)
        CHECK(r.oleinik_violation <= 1e-10);
    }
    CHECK(traj.ledger.back() > 0.0);
    CHECK(traj.clip_total <= 1e-12 * N0 * double(traj.steps ? traj.steps : 1));
}

TEST_CASE("data below x loses almost nothing through the boundary") {
    const Grid g = build_grid(1e-5, 200, 1.02);
    SolverConfig cfg;
    cfg.t_end = 2.0;
    cfg.output_every = 0.5;
    State half;
    half.n.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) half.n[i] = 0.5 * g.centers[i];
    const Trajectory traj = run(half, g, cfg, BoundEnvelopes::from_initial(half.n, g));
    CHECK(traj.ledger.back() < 1e-9);
}

TEST_CASE("cutoff mode conserves the budget and respects the Robin condition") {
    InitialSpec s = InitialSpec::scaled_equilibrium(1.0, 0.5);
    s.kappa = 0.1;
    const Grid g = build_grid(1e-3, 200, 1.0);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.output_every = 0.1;
    cfg.mode = SolverConfig::Mode::cutoff;
    cfg.cutoff_h = 0.1;
    const State init = initial_state(s, g);
    const Trajectory traj = run(init, g, cfg, BoundEnvelopes::from_initial(init.n, g));
    const double N0 = traj.reports.front().N;
    CHECK(std::abs(traj.reports.back().N + traj.ledger.back() - N0) <= 1e-11 * (1.0 + N0));
    // dn/dx ~ -n at the right boundary once the state has settled
    const auto& n = traj.final_state().n;
    const std::size_t m = g.size();
    const double slope = (n[m - 1] - n[m - 2]) / g.spacing(m - 2);
    CHECK(slope == doctest::Approx(-n[m - 1]).epsilon(0.2));
}

TEST_CASE("step validates inputs") {
    const Grid g = build_grid(1e-3, 50, 1.0);
    SolverConfig cfg;
    State s;
    s.n.assign(g.size(), 1.0);
    CHECK_THROWS_AS(step(s, 0.0, 0.0, g, cfg), std::invalid_argument);
    State bad;
    bad.n.assign(g.size() - 1, 1.0);
    CHECK_THROWS_AS(step(bad, 0.0, 1e-3, g, cfg), std::invalid_argument);
    SolverConfig badcfg;
    badcfg.cfl = 0.0;
    CHECK_THROWS_AS(adaptive_dt(s, g, badcfg), std::invalid_argument);
}

TEST_CASE("refine_study rejects a single level and converges on smooth data") {
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.output_every = 0.5;
    const InitialSpec spec = InitialSpec::scaled_equilibrium(1.0, 0.5);
    CHECK_THROWS_AS(refine_study(spec, 1e-3, 1.02, 100, 1, cfg), std::invalid_argument);

    const RefineStudy study = refine_study(spec, 1e-3, 1.02, 100, 3, cfg);
    REQUIRE(study.differences.size() == 2);
    CHECK(study.differences[1] < study.differences[0]);
    REQUIRE(study.orders.size() == 1);
    CHECK(study.orders[0] > 0.5);
}

TEST_CASE("refine_study differences shrink for condensing data") {
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.output_every = 0.5;
    const RefineStudy study = refine_study(InitialSpec::constant(2.0), 1e-3, 1.0, 100, 3, cfg);
    CHECK(study.differences[1] < study.differences[0]);
}

TEST_CASE("lockstep pair run shares output times and steps") {
    const Grid g = build_grid(1e-3, 100, 1.0);
    SolverConfig cfg;
    cfg.t_end = 0.4;
    cfg.output_every = 0.1;
    State a, b;
    a.n.assign(g.size(), 1.0);
    b.n.assign(g.size(), 2.0);
    const auto [ta, tb] = run_pair(a, b, g, cfg, BoundEnvelopes::from_initial(a.n, g),
                                   BoundEnvelopes::from_initial(b.n, g));
    REQUIRE(ta.times.size() == tb.times.size());
    CHECK(ta.steps == tb.steps);
    for (std::size_t k = 0; k < ta.times.size(); ++k) CHECK(ta.times[k] == tb.times[k]);
    // ordered initial data stays ordered under the shared-step scheme
    for (std::size_t k = 0; k < ta.states.size(); ++k)
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(ta.states[k].n[i] <= tb.states[k].n[i] + 1e-12);
}
