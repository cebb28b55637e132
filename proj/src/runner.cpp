#include "becsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>

#include "json.hpp"

#include "becsim/acceptance.hpp"
#include "becsim/output.hpp"
#include "becsim/version.hpp"

namespace becsim {

namespace {

using nlohmann::json;

json initial_json(const InitialSpec& s) {
    json j;
    switch (s.family) {
        case InitialSpec::Family::constant:
            j["family"] = "constant";
            j["c"] = s.c;
            break;
        case InitialSpec::Family::linear:
            j["family"] = "linear";
            j["a"] = s.a;
            break;
        case InitialSpec::Family::scaled_equilibrium:
            j["family"] = "equilibrium";
            j["a"] = s.a;
            j["mu"] = s.mu;
            break;
        case InitialSpec::Family::bump:
            j["family"] = "bump";
            j["center"] = s.center;
            j["width"] = s.width;
            j["height"] = s.height;
            break;
        case InitialSpec::Family::table:
            j["family"] = "table";
            j["points"] = s.table.size();
            break;
    }
    j["kappa"] = s.kappa;
    j["p"] = s.p;
    return j;
}

json config_json(const RunConfig& rc) {
    json j;
    j["grid"] = {{"epsilon", rc.grid.epsilon},
                 {"cells", rc.grid.cells},
                 {"grading", rc.grid.grading}};
    j["initial"] = initial_json(rc.initial);
    if (rc.initial_b) j["initial_b"] = initial_json(*rc.initial_b);
    j["solver"] = {{"t_end", rc.solver.t_end},
                   {"cfl", rc.solver.cfl},
                   {"dt_max", rc.solver.dt_max},
                   {"theta", rc.solver.theta},
                   {"output_every", rc.solver.output_every},
                   {"mode", rc.solver.mode == SolverConfig::Mode::cutoff ? "cutoff" : "plain"},
                   {"cutoff_h", rc.solver.cutoff_h}};
    j["checks"] = {{"tol_scale", rc.tol_scale}, {"contraction_p", rc.contraction_p}};
    return j;
}

json checks_json(const std::vector<CheckStatus>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(
            {{"name", c.name}, {"status", c.status}, {"value", c.value}, {"threshold", c.threshold}});
    return arr;
}

void write_manifest(const std::string& path, const json& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body.dump(2) << '\n';
}

std::string overall_status(const std::vector<CheckStatus>& checks) {
    bool warn = false;
    for (const auto& c : checks) {
        if (c.status == "fail") return "fail";
        if (c.status == "warn") warn = true;
    }
    return warn ? "warn" : "pass";
}

}  // namespace

State build_initial(const RunConfig& rc, const InitialSpec& spec, const Grid& grid) {
    State init = initial_state(spec, grid);
    if (rc.cutoff_adjust) {
        if (!(spec.kappa > 0.0))
            throw std::invalid_argument("cutoff_adjust requires mollified data (kappa > 0)");
        if (rc.solver.mode != SolverConfig::Mode::cutoff)
            throw std::invalid_argument("cutoff_adjust requires cutoff mode");
        const CutoffProfile prof = CutoffProfile::bump_integral(rc.solver.cutoff_h);
        const Mollified source(spec);
        init = cutoff_compatible(init, prof, grid, source);
    }
    return init;
}

RunArtifacts simulate(const RunConfig& rc, double tol_scale) {
    RunArtifacts art;
    art.grid = build_grid(rc.grid.epsilon, rc.grid.cells, rc.grid.grading);
    art.initial = build_initial(rc, rc.initial, art.grid);
    art.env = BoundEnvelopes::from_initial(art.initial.n, art.grid);
    art.traj = run(art.initial, art.grid, rc.solver, art.env);
    art.N0 = art.traj.reports.front().N;
    art.tol = DiscTol{art.grid.max_width(), art.traj.max_dt, tol_scale * rc.tol_scale};

    const double tol = art.tol.value();
    double balance = 0.0, supv = 0.0, olev = 0.0;
    bool ledger_monotone = true;
    double entropy_rise = 0.0;
    for (std::size_t k = 0; k < art.traj.reports.size(); ++k) {
        const auto& r = art.traj.reports[k];
        balance = std::max(balance, std::abs(r.N + r.ledger - art.N0));
        supv = std::max(supv, r.sup_violation);
        olev = std::max(olev, r.oleinik_violation);
        if (k > 0) {
            if (r.ledger < art.traj.reports[k - 1].ledger - 1e-15) ledger_monotone = false;
            entropy_rise =
                std::max(entropy_rise, r.entropy - art.traj.reports[k - 1].entropy);
        }
    }
    const double energy_min = min_pair_energy_slack(art.traj);

    auto push = [&](const std::string& name, bool ok, double value, double threshold) {
        art.checks.push_back({name, ok ? "pass" : "fail", value, threshold});
    };
    push("photon_balance", balance <= 1e-10 * (1.0 + art.N0), balance, 1e-10 * (1.0 + art.N0));
    push("supersolution", supv <= tol, supv, tol);
    push("oleinik", olev <= tol, olev, tol);
    push("energy", energy_min >= -1e-3, energy_min, -1e-3);
    push("ledger_monotone", ledger_monotone, ledger_monotone ? 1.0 : 0.0, 1.0);
    const double clip_limit = 1e-12 * std::max(art.N0, 1.0) * std::max<double>(art.traj.steps, 1);
    push("clip_mass", art.traj.clip_total <= clip_limit, art.traj.clip_total, clip_limit);
    // entropy monotonicity is stated without proof; soft check only
    art.checks.push_back({"entropy_monotone", entropy_rise <= 1e-6 ? "pass" : "warn",
                          entropy_rise, 1e-6});

    const double N_final = art.traj.reports.back().N;
    if (N_final > 0.0 && N_final <= 0.75) {
        try {
            art.fit = fit(art.traj.final_state(), N_final, art.grid);
        } catch (const std::exception&) {
            art.fit.reset();  // vacuum or out of range; fit stays unset
        }
    }
    return art;
}

bool all_checks_pass(const std::vector<CheckStatus>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckStatus& c) { return c.status != "fail"; });
}

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("BECSIM_OUT_DIR"); env && *env) return env;
    return "becsim_out";
}

namespace {

json fit_json(const EquilibriumFit& f) {
    return {{"mu_from_number", f.mu_from_number},
            {"mu_from_profile", f.mu_from_profile},
            {"mu_selected", f.mu_selected},
            {"discrepancy", f.discrepancy},
            {"profile_stddev", f.profile_stddev},
            {"residual_l1", f.residual_l1},
            {"selected", f.selected}};
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const SolverAbort& e) {
        std::cerr << "solver abort at t = " << e.t << ": " << e.what() << '\n';
        return kExitSolverAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace

int cmd_run(const std::string& cfg_path, const std::string& out_dir, double tol_scale) {
    return run_guarded([&]() {
        const auto t0 = std::chrono::steady_clock::now();
        const RunConfig rc = load_run_config(cfg_path);
        ensure_dir(out_dir);
        RunArtifacts art = simulate(rc, tol_scale);

        std::vector<double> residual(art.traj.states.size(), 0.0);
        if (art.fit) {
            std::vector<double> eq(art.grid.size());
            for (std::size_t i = 0; i < art.grid.size(); ++i)
                eq[i] = equilibrium_density(art.fit->mu_selected, art.grid.centers[i]);
            for (std::size_t k = 0; k < art.traj.states.size(); ++k)
                residual[k] = weighted_l1(art.traj.states[k].n, eq, 0.0, art.grid);
        }

        const std::string traj_path = out_dir + "/trajectory.csv";
        const std::string summary_path = out_dir + "/summary.csv";
        write_trajectory_csv(traj_path, art.traj, art.grid);
        write_summary_csv(summary_path, art.traj, art.fit ? &residual : nullptr);

        json manifest;
        manifest["version"] = std::string(kVersion);
        manifest["config"] = config_json(rc);
        manifest["outputs"] = {traj_path, summary_path};
        manifest["checks"] = checks_json(art.checks);
        manifest["status"] = overall_status(art.checks);
        manifest["steps"] = art.traj.steps;
        manifest["tol_disc"] = art.tol.value();
        if (art.fit) manifest["equilibrium_fit"] = fit_json(*art.fit);
        const std::optional<std::size_t> onset = onset_detect(art.traj, 1e-4);
        if (onset) manifest["onset_time"] = art.traj.times[*onset];
        manifest["wall_clock_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(out_dir + "/manifest.json", manifest);

        std::cout << "run: " << manifest["status"].get<std::string>() << " (" << art.traj.steps
                  << " steps, outputs in " << out_dir << ")\n";
        return all_checks_pass(art.checks) ? kExitOk : kExitCheckFailed;
    });
}

int cmd_compare(const std::string& cfg_path, const std::string& out_dir, double tol_scale) {
    return run_guarded([&]() {
        const auto t0 = std::chrono::steady_clock::now();
        const RunConfig rc = load_run_config(cfg_path);
        if (!rc.initial_b) throw ConfigError("compare needs an [initial_b] section", 0);
        ensure_dir(out_dir);

        const Grid grid = build_grid(rc.grid.epsilon, rc.grid.cells, rc.grid.grading);
        const State a = build_initial(rc, rc.initial, grid);
        const State b = build_initial(rc, *rc.initial_b, grid);
        const BoundEnvelopes ea = BoundEnvelopes::from_initial(a.n, grid);
        const BoundEnvelopes eb = BoundEnvelopes::from_initial(b.n, grid);
        auto [ta, tb] = run_pair(a, b, grid, rc.solver, ea, eb);

        const DiscTol tol{grid.max_width(), ta.max_dt, tol_scale * rc.tol_scale};
        ContractionReport rep = check_contraction(ta, tb, rc.contraction_p, grid, 1e-8);

        std::vector<CheckStatus> checks;
        checks.push_back({"gronwall_envelope", rep.comparison_ok ? "pass" : "fail",
                          rep.comparison_ok ? 1.0 : 0.0, 1.0});
        if (rc.contraction_p == 0.0)
            checks.push_back({"l1_nonincreasing", rep.l1_nonincreasing ? "pass" : "fail",
                              rep.l1_nonincreasing ? 1.0 : 0.0, 1.0});

        const std::string cmp_path = out_dir + "/compare.csv";
        write_compare_csv(cmp_path, ta.times, rep);
        write_summary_csv(out_dir + "/summary_a.csv", ta);
        write_summary_csv(out_dir + "/summary_b.csv", tb);

        json manifest;
        manifest["version"] = std::string(kVersion);
        manifest["config"] = config_json(rc);
        manifest["outputs"] = {cmp_path, out_dir + "/summary_a.csv", out_dir + "/summary_b.csv"};
        manifest["checks"] = checks_json(checks);
        manifest["status"] = overall_status(checks);
        manifest["tol_disc"] = tol.value();
        manifest["initial_distance"] = rep.initial_distance;
        manifest["final_distance"] = rep.final_distance;
        manifest["wall_clock_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(out_dir + "/manifest.json", manifest);

        std::cout << "compare: " << manifest["status"].get<std::string>() << " (d0 = "
                  << rep.initial_distance << ", dT = " << rep.final_distance << ")\n";
        return all_checks_pass(checks) ? kExitOk : kExitCheckFailed;
    });
}

int cmd_sweep(const std::string& cfg_path, const std::string& out_dir, double tol_scale,
              int jobs) {
    return run_guarded([&]() {
        const auto t0 = std::chrono::steady_clock::now();
        const RunConfig base = load_run_config(cfg_path);
        if (base.sweep.axis == SweepSpec::Axis::none || base.sweep.values.size() < 2)
            throw ConfigError("sweep needs a [sweep] axis with at least 2 values", 0);
        ensure_dir(out_dir);

        std::vector<RunConfig> configs;
        for (double v : base.sweep.values) {
            RunConfig rc = base;
            switch (base.sweep.axis) {
                case SweepSpec::Axis::epsilon:
                    rc.grid.epsilon = v;
                    break;
                case SweepSpec::Axis::kappa:
                    rc.initial.kappa = v;
                    break;
                case SweepSpec::Axis::cutoff_h:
                    rc.solver.mode = SolverConfig::Mode::cutoff;
                    rc.solver.cutoff_h = v;
                    break;
                case SweepSpec::Axis::cells:
                    rc.grid.cells = std::size_t(v);
                    break;
                case SweepSpec::Axis::none:
                    break;
            }
            configs.push_back(std::move(rc));
        }
        // in cutoff-width sweeps the reference is the plain-mode run
        const bool against_plain = base.sweep.axis == SweepSpec::Axis::cutoff_h;
        if (against_plain) {
            RunConfig rc = base;
            rc.solver.mode = SolverConfig::Mode::plain;
            configs.push_back(std::move(rc));
        }

        std::vector<RunArtifacts> arts(configs.size());
        const int workers = std::max(1, jobs);
        std::vector<std::future<RunArtifacts>> futures(configs.size());
        std::size_t next = 0;
        while (next < configs.size()) {
            const std::size_t batch = std::min<std::size_t>(workers, configs.size() - next);
            for (std::size_t j = 0; j < batch; ++j)
                futures[next + j] = std::async(std::launch::async, [&, idx = next + j]() {
                    return simulate(configs[idx], tol_scale);
                });
            for (std::size_t j = 0; j < batch; ++j) arts[next + j] = futures[next + j].get();
            next += batch;
        }

        const std::size_t nvals = base.sweep.values.size();
        const RunArtifacts* plain = against_plain ? &arts[nvals] : nullptr;

        std::ofstream csv(out_dir + "/sweep.csv");
        if (!csv) throw std::runtime_error("cannot write sweep.csv");
        csv << "value,N_final,ledger_final,dist_prev";
        if (against_plain) csv << ",dist_plain";
        csv << '\n';
        bool checks_ok = true;
        for (std::size_t k = 0; k < nvals; ++k) {
            const auto& rep = arts[k].traj.reports.back();
            double dist_prev = 0.0;
            if (k > 0)
                dist_prev = cross_grid_l1(arts[k].traj.final_state().n, arts[k].grid,
                                          arts[k - 1].traj.final_state().n, arts[k - 1].grid);
            csv << format_double(base.sweep.values[k]) << ',' << format_double(rep.N) << ','
                << format_double(rep.ledger) << ',' << format_double(dist_prev);
            if (against_plain) {
                const double dp = cross_grid_l1(arts[k].traj.final_state().n, arts[k].grid,
                                                plain->traj.final_state().n, plain->grid);
                csv << ',' << format_double(dp);
            }
            csv << '\n';
            checks_ok = checks_ok && all_checks_pass(arts[k].checks);
        }
        csv.close();

        json manifest;
        manifest["version"] = std::string(kVersion);
        manifest["config"] = config_json(base);
        manifest["outputs"] = {out_dir + "/sweep.csv"};
        manifest["status"] = checks_ok ? "pass" : "fail";
        manifest["wall_clock_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(out_dir + "/manifest.json", manifest);

        std::cout << "sweep: " << (checks_ok ? "pass" : "fail") << " (" << nvals
                  << " values, outputs in " << out_dir << ")\n";
        return checks_ok ? kExitOk : kExitCheckFailed;
    });
}

int cmd_verify(bool full, const std::string& out_dir, double tol_scale) {
    return run_guarded([&]() {
        acceptance::Options opts;
        opts.full = full;
        opts.out_dir = out_dir;
        opts.tol_scale = tol_scale;
        const auto results = acceptance::run_all(opts);
        return acceptance::report(results, out_dir, std::cout);
    });
}

}  // namespace becsim
