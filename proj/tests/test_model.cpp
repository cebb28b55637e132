#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "becsim/model.hpp"
#include "oracles.hpp"

using namespace becsim;

namespace {

double nmu(double mu, double x) { return x * x / (x + mu); }
double nmu_prime(double mu, double x) { return x * (x + 2.0 * mu) / ((x + mu) * (x + mu)); }

}  // namespace

TEST_CASE("flux vanishes at exact equilibrium samples") {
    for (double mu : {0.0, 0.3, 1.0, 5.0}) {
        for (double x : {0.05, 0.3, 0.7, 1.0}) {
            const double n = nmu(mu, x);
            CHECK(std::abs(flux_model(n, n, x, nmu_prime(mu, x))) < 1e-14);
        }
    }
}

TEST_CASE("flux examples") {
    CHECK(flux_model(0.0, 0.0, 0.5, 0.0) == 0.0);
    CHECK(flux_model(1.0, 1.0, 0.5, 0.0) == 0.0);  // g = 1 - 1 = 0, no jump
    CHECK_THROWS_AS(flux_model(-1.0, 0.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("rusanov dissipation has the diffusive sign") {
    // a jump from 2 to 0 across an interface must carry flux toward the mean
    const double with_jump = flux_model(2.0, 0.0, 0.5, 0.0);
    const double gl = 2.0 * 2.0 - 2.0 * 0.5 * 2.0;
    CHECK(with_jump < 0.5 * gl);  // penalty 0.5 * alpha * (0 - 2) < 0
}

TEST_CASE("supersolution closed form") {
    for (double x : {0.0, 0.3, 1.0}) CHECK(supersolution(x, 1.0, 0.0) == doctest::Approx(3.0));
    CHECK(supersolution(1.0, 4.0, 0.0) == doctest::Approx(1.0 + 2.0 / 2.0));
    CHECK(supersolution(0.5, 4.0, 0.0) == doctest::Approx(1.625).epsilon(1e-15));
    CHECK_THROWS_AS(supersolution(0.5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("supersolution decreases in t and dominates x") {
    for (double x : {0.1, 0.6, 0.9}) {
        double prev = supersolution(x, 0.5, 0.0);
        for (double t : {1.0, 2.0, 8.0, 64.0}) {
            const double s = supersolution(x, t, 0.0);
            CHECK(s < prev);
            CHECK(s > x);
            prev = s;
        }
        CHECK(supersolution(x, 1e14, 0.0) == doctest::Approx(x).epsilon(1e-6));
    }
}

TEST_CASE("equilibrium density") {
    for (double x : {0.2, 0.5, 1.0}) CHECK(equilibrium_density(0.0, x) == doctest::Approx(x));
    CHECK(equilibrium_density(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(equilibrium_density(1e9, 0.5) < 1e-9);
    CHECK_THROWS_AS(equilibrium_density(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("equilibrium number closed values") {
    CHECK(equilibrium_number(0.0) == 0.5);
    CHECK(equilibrium_number(1.0) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-14));
    // quadrature oracle of int_0^1 x^2/(x+1) dx
    const double oracle = oracles::integrate([](double x) { return x * x / (x + 1.0); }, 0.0, 1.0);
    CHECK(std::abs(equilibrium_number(1.0) - oracle) < 1e-12);
}

TEST_CASE("equilibrium number matches the long double series for large mu") {
    for (double mu : {1e4, 1e6, 1e9}) {
        const double hi = double(oracles::equilibrium_number_series((long double)mu));
        CHECK(equilibrium_number(mu) == doctest::Approx(hi).epsilon(1e-14));
    }
    CHECK(std::abs(equilibrium_number(1e6) - 3.3333e-7) < 1e-11);
}

TEST_CASE("equilibrium number is strictly decreasing") {
    oracles::Lcg rng;
    for (int k = 0; k < 200; ++k) {
        const double a = std::pow(10.0, rng.uniform(-6.0, 6.0));
        const double b = a * (1.0 + rng.uniform(0.01, 1.0));
        CHECK(equilibrium_number(a) > equilibrium_number(b));
    }
    CHECK(equilibrium_number(1e-12) <= 0.5);
}

TEST_CASE("solve_mu boundary and round trips") {
    CHECK(solve_mu(0.5) == 0.0);
    CHECK(std::abs(solve_mu(std::log(2.0) - 0.5) - 1.0) < 1e-10);
    const double mu = solve_mu(0.25);
    CHECK(std::abs(equilibrium_number(mu) - 0.25) < 1e-12);
    CHECK_THROWS_AS(solve_mu(0.6), std::invalid_argument);
    CHECK_THROWS_AS(solve_mu(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_mu(-1.0), std::invalid_argument);
}

TEST_CASE("solve_mu inverts equilibrium_number on [0, 100]") {
    oracles::Lcg rng;
    for (int k = 0; k < 100; ++k) {
        const double mu = rng.uniform(0.0, 100.0);
        CHECK(std::abs(solve_mu(equilibrium_number(mu)) - mu) < 1e-10 * std::max(1.0, mu));
    }
}

TEST_CASE("onset time bound") {
    // hand-evaluated: delta = 0.75, bound = 1/(4 (sqrt(1.75) - 1)^2)
    const double hand2 = 1.0 / (4.0 * std::pow(std::sqrt(1.75) - 1.0, 2));
    CHECK(onset_time_bound(2.0) == doctest::Approx(hand2).epsilon(1e-12));
    CHECK(std::abs(onset_time_bound(2.0) - 2.398) < 2.5e-3);
    CHECK(std::abs(onset_time_bound(1.0) - 17.94) < 5e-3);
    CHECK(onset_time_bound(0.5 + 1e-8) > 1e10);
    CHECK(onset_time_bound(1.0) > onset_time_bound(2.0));
    CHECK_THROWS_AS(onset_time_bound(0.5), std::invalid_argument);
}

TEST_CASE("persistence floor") {
    // at t = t* the floor equals b(t*) xhat = (4/t*) min(t* n0/4, 1)
    CHECK(persistence_floor(1.0, 1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(persistence_floor(2.0, 2.0, 4.0) == doctest::Approx(2.0).epsilon(1e-12));  // xhat clamps at 1
    CHECK(persistence_floor(30.0, 1.0, 0.5) < 1e-20);
    double prev = persistence_floor(1.0, 1.0, 0.5);
    for (double t : {1.5, 2.0, 3.0}) {
        const double f = persistence_floor(t, 1.0, 0.5);
        CHECK(f < prev);
        CHECK(f > 0.0);
        prev = f;
    }
    CHECK_THROWS_AS(persistence_floor(0.5, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(persistence_floor(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("gronwall constant") {
    CHECK(gronwall_constant(0.0) == 0.0);
    CHECK(gronwall_constant(2.0) == 10.0);
    CHECK(gronwall_constant(1.0) == 4.0);
}

TEST_CASE("entropy of the unit state is int x dx") {
    const Grid g = build_grid(1e-4, 2000, 1.0);
    const std::vector<double> ones(g.size(), 1.0);
    CHECK(entropy(ones, g, 1e-30) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("entropy of n_1 matches the quadrature oracle") {
    const Grid g = build_grid(1e-5, 4000, 1.0);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = nmu(1.0, g.centers[i]);
    const double oracle = oracles::integrate(
        [](double x) {
            const double n = x * x / (x + 1.0);
            return x * n - x * x * std::log(n);
        },
        1e-5, 1.0);
    CHECK(entropy(v, g, 1e-30) == doctest::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("entropy floor only affects clamped cells") {
    const Grid g = build_grid(0.1, 32, 1.0);
    std::vector<double> v(g.size(), 2.0);
    v[3] = 0.0;
    const double h1 = entropy(v, g, 1e-8);
    const double h2 = entropy(v, g, 2e-8);
    CHECK(h1 != h2);  // clamped cell responds to the floor
    std::vector<double> pos(g.size(), 2.0);
    CHECK(entropy(pos, g, 1e-8) == entropy(pos, g, 2e-8));  // no cell below either floor
}

TEST_CASE("cutoff profile shape") {
    const CutoffProfile p = CutoffProfile::bump_integral(0.1);
    CHECK(p.chi_h(1.0) == 1.0);
    CHECK(p.chi_h(1.0 - 2.0 * p.h) == 0.0);
    CHECK(p.chi_h(0.5) == 0.0);
    double prev = -1.0;
    for (double x = 0.75; x <= 1.0; x += 0.01) {
        const double c = p.chi_h(x);
        CHECK(c >= prev - 1e-15);
        prev = c;
    }
    CHECK_THROWS_AS(CutoffProfile::bump_integral(0.0), std::invalid_argument);
    CHECK_THROWS_AS(CutoffProfile::bump_integral(0.5), std::invalid_argument);
}

TEST_CASE("bump kernel is a normalized symmetric mollifier") {
    CHECK(bump_cdf(-1.0) == 0.0);
    CHECK(bump_cdf(1.0) == 1.0);
    CHECK(bump_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const double mass = oracles::integrate([](double u) { return bump(u); }, -1.0, 1.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    // cdf at a few points against the oracle
    for (double u : {-0.7, -0.2, 0.4, 0.9}) {
        const double oracle = oracles::integrate([](double z) { return bump(z); }, -1.0, u);
        CHECK(bump_cdf(u) == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("cutoff flux reduces to the plain flux left of the strip") {
    const CutoffProfile p = CutoffProfile::bump_integral(0.1);
    for (double x : {0.1, 0.5, 0.79}) {
        CHECK(cutoff_flux(0.7, -0.3, x, p) ==
              doctest::Approx(flux_pointwise(0.7, -0.3, x)).epsilon(1e-15));
    }
}

TEST_CASE("cutoff flux encodes the Robin condition at x = 1") {
    const CutoffProfile p = CutoffProfile::bump_integral(0.1);
    // n = 1, dn/dx = -1: J_h = -1 - 2 + 1 + 2 = 0
    CHECK(cutoff_flux(1.0, -1.0, 1.0, p) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cutoff_flux(0.0, 0.0, 1.0, p) == 0.0);
}

TEST_CASE("cutoff flux converges to the plain flux as h -> 0") {
    const double x = 0.97, n = 0.8, d = -0.2;
    double prev = std::abs(cutoff_flux(n, d, x, CutoffProfile::bump_integral(0.1)) -
                           flux_pointwise(n, d, x));
    for (double h : {0.03, 0.01, 0.003}) {
        const double dev =
            std::abs(cutoff_flux(n, d, x, CutoffProfile::bump_integral(h)) - flux_pointwise(n, d, x));
        CHECK(dev <= prev + 1e-15);
        prev = dev;
    }
    CHECK(prev == 0.0);  // x < 1 - 2h for the last h
}

TEST_CASE("bound envelopes from initial data") {
    const Grid g = build_grid(0.1, 64, 1.0);
    std::vector<double> flat(g.size(), 2.0);
    const BoundEnvelopes e1 = BoundEnvelopes::from_initial(flat, g);
    CHECK(e1.tau1 == doctest::Approx(1.0).epsilon(1e-14));  // 4 / sup^2 = 4/4
    CHECK(std::isinf(e1.tau2));                             // nondecreasing data

    std::vector<double> dec(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dec[i] = 2.0 - g.centers[i];  // slope -1
    const BoundEnvelopes e2 = BoundEnvelopes::from_initial(dec, g);
    CHECK(e2.tau2 == doctest::Approx(4.0).epsilon(1e-10));

    std::vector<double> zero(g.size(), 0.0);
    const BoundEnvelopes e3 = BoundEnvelopes::from_initial(zero, g);
    CHECK(std::isinf(e3.tau1));
    CHECK(supersolution(0.3, 5.0, e3.tau1) == doctest::Approx(0.3));
}
