#include <string>

#include "CLI11.hpp"

#include "becsim/runner.hpp"
#include "becsim/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"becsim - finite-volume simulator and bound-verification harness for the "
                 "degenerate nonlinear Fokker-Planck model dn/dt = d/dx (x^2 dn/dx + n^2 - 2xn) "
                 "on (eps, 1]"};
    app.set_version_flag("--version", std::string(becsim::kVersion));

    std::string out_dir_flag;
    double tol_scale = 1.0;
    int jobs = 1;
    app.add_option("--out-dir", out_dir_flag, "output directory (default: $BECSIM_OUT_DIR or ./becsim_out)");
    app.add_option("--tol-scale", tol_scale, "multiplier on the discretization tolerance");
    app.add_option("--jobs", jobs, "worker pool size for sweeps");

    std::string run_cfg, compare_cfg, sweep_cfg;
    auto* run = app.add_subcommand("run", "single run from a TOML config");
    run->add_option("config", run_cfg, "config file")->required();
    auto* compare = app.add_subcommand("compare", "evolve a pair and report contraction distances");
    compare->add_option("config", compare_cfg, "config file with [initial] and [initial_b]")->required();
    auto* sweep = app.add_subcommand("sweep", "parameter sweep over epsilon, kappa, h, or cells");
    sweep->add_option("config", sweep_cfg, "config file with a [sweep] section")->required();

    bool quick = false, full = false;
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_flag("--quick", quick, "standard suite (default)");
    verify->add_flag("--full", full, "add refinement and sweep studies");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    const std::string out_dir = becsim::resolve_out_dir(out_dir_flag);
    if (run->parsed()) return becsim::cmd_run(run_cfg, out_dir, tol_scale);
    if (compare->parsed()) return becsim::cmd_compare(compare_cfg, out_dir, tol_scale);
    if (sweep->parsed()) return becsim::cmd_sweep(sweep_cfg, out_dir, tol_scale, jobs);
    if (verify->parsed()) return becsim::cmd_verify(full, out_dir, tol_scale);
    return becsim::kExitConfigError;
}
