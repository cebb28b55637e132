#include <stdexcept>

#include "doctest.h"

#include "becsim/config.hpp"

using namespace becsim;

TEST_CASE("a minimal config parses with defaults") {
    const RunConfig rc = parse_run_config("[initial]\nfamily = \"constant\"\nc = 2.0\n");
    CHECK(rc.grid.epsilon == 1e-3);
    CHECK(rc.grid.cells == 400);
    CHECK(rc.grid.grading == 1.02);
    CHECK(rc.initial.family == InitialSpec::Family::constant);
    CHECK(rc.initial.c == 2.0);
    CHECK(rc.initial.kappa == 0.0);
    CHECK(rc.solver.t_end == 1.0);
    CHECK(rc.solver.mode == SolverConfig::Mode::plain);
    CHECK(!rc.initial_b.has_value());
}

TEST_CASE("full config round trip") {
    const char* text = R"(
# a full configuration
[grid]
epsilon = 1e-4
cells = 200
grading = 1.01

[initial]
family = "equilibrium"
a = 1.0
mu = 0.5
kappa = 0.05
p = 2.0

[initial_b]
family = "linear"
a = 3.0

[solver]
t_end = 2.5
cfl = 0.4           # explicit part
dt_max = 5e-4
theta = 0.5
output_every = 0.25
mode = "cutoff"
cutoff_h = 0.2

[checks]
tol_scale = 2.0
contraction_p = 2.0

[sweep]
axis = "epsilon"
values = [4e-3, 2e-3, 1e-3]
)";
    const RunConfig rc = parse_run_config(text);
    CHECK(rc.grid.epsilon == 1e-4);
    CHECK(rc.grid.cells == 200);
    CHECK(rc.initial.family == InitialSpec::Family::scaled_equilibrium);
    CHECK(rc.initial.mu == 0.5);
    CHECK(rc.initial.kappa == 0.05);
    CHECK(rc.initial.p == 2.0);
    REQUIRE(rc.initial_b.has_value());
    CHECK(rc.initial_b->a == 3.0);
    CHECK(rc.solver.theta == 0.5);
    CHECK(rc.solver.mode == SolverConfig::Mode::cutoff);
    CHECK(rc.solver.cutoff_h == 0.2);
    CHECK(rc.tol_scale == 2.0);
    CHECK(rc.sweep.axis == SweepSpec::Axis::epsilon);
    REQUIRE(rc.sweep.values.size() == 3);
    CHECK(rc.sweep.values[1] == 2e-3);
}

TEST_CASE("malformed configs report the line number") {
    try {
        parse_run_config("[grid]\nepsilon = 1e-3\nbogus line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    try {
        parse_run_config("[solver]\nt_end = \"soon\"\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_run_config("[initial]\nfamily = \"mystery\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[initia]\nfamily = \"constant\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[grid]\nepsilon = 1e-3\nepsilon = 2e-3\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[solver]\nmode = \"sideways\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[sweep]\naxis = \"volume\"\nvalues = [1, 2]\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[solver]\ncfl = 0.0\n"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("[initial]\nkappa = 0.5\n"), ConfigError);
}

TEST_CASE("values support strings booleans arrays and comments") {
    const ConfigFile cfg = ConfigFile::parse(
        "top = 1 # inline\n[a]\ns = \"x # not a comment\"\nb = true\narr = [1, 2.5, -3e-2]\n");
    CHECK(cfg.number("", "top", 0.0) == 1.0);
    CHECK(cfg.str("a", "s", "") == "x # not a comment");
    CHECK(cfg.boolean("a", "b", false));
    const auto arr = cfg.array("a", "arr");
    REQUIRE(arr.size() == 3);
    CHECK(arr[2] == -3e-2);
    CHECK(cfg.number("a", "missing", 7.0) == 7.0);
}
