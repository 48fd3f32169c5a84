#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "latsamp/errors.hpp"
#include "latsamp/variance_engine.hpp"
#include "oracles.hpp"

using namespace latsamp;

namespace {

RadialProfile constant_profile(const std::string& lattice, double t, std::size_t n) {
    RadialProfile p;
    p.lattice = get_lattice(lattice);
    p.t_values.assign(n, t);
    return p;
}

VarianceCurve synthetic(std::vector<double> rates, std::vector<double> e2, double se) {
    VarianceCurve c;
    c.lattice_name = "synthetic";
    c.dim = 2;
    c.rates = rates;
    c.sigma_e2 = e2;
    c.sigma_lb2.assign(rates.size(), 0.0);
    c.gap = e2;
    c.std_error.assign(rates.size(), se);
    return c;
}

}  // namespace

TEST_CASE("lower bound closed form") {
    for (int d : {1, 2, 3, 4, 8}) {
        const double v = oracle::unit_ball_volume(d);
        for (double r : {0.3, 0.9, 1.2, 1.7, 2.4}) {
            INFO(d << " " << r);
            CHECK(lower_bound(d, r) == doctest::Approx(std::max(0.0, 1.0 - std::pow(r, d) / v)).epsilon(1e-13));
            CHECK(lower_bound(d, r) >= 0.0);
        }
    }
    CHECK(lower_bound(1, 2.0) == 0.0);
}

TEST_CASE("Z1 sweep is the one-dimensional closed form") {
    const auto p = build_profile(get_lattice("Z1"), 1000, 1);
    const auto c = sweep(p, default_rate_grid());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double want = 1.0 - std::min(1.0, c.rates[i] / 2.0);
        CHECK(std::abs(c.sigma_e2[i] - want) <= 1e-15);
        CHECK(c.std_error[i] == 0.0);
    }
}

TEST_CASE("Z2 sweep matches the disk-square oracle") {
    const auto p = build_profile(frequency_lattice(get_lattice("Z2")), 100000, 1);
    const auto grid = uniform_grid(1.41, 2.0, 21);
    const auto c = sweep(p, grid);
    for (std::size_t i = 0; i < c.size(); ++i) {
        INFO(c.rates[i]);
        const double want = oracle::z2_error_variance(c.rates[i]);
        CHECK(std::abs(c.sigma_e2[i] - want) <= 3.0 * c.std_error[i] + 1e-15);
    }
}

TEST_CASE("estimator is exact for constant profiles") {
    const auto p = constant_profile("Z3", 0.6, 50);
    for (double r : {0.5, 1.0, 1.6}) {
        const auto e = error_variance(p, r);
        const double w = 1.0 / r;
        const double want = w <= 0.6 ? 0.0 : 1.0 - std::pow(0.6 / w, 3);
        CHECK(e.value == doctest::Approx(want).epsilon(1e-14));
        CHECK(e.std_error == 0.0);
    }
    CHECK(error_variance(p, 1.0 / 0.6).value == 0.0);
    CHECK(error_variance(p, 5.0).value == 0.0);
}

TEST_CASE("variance is never negative and is non-increasing in rate") {
    const auto p = build_profile(frequency_lattice(get_lattice("A3")), 20000, 1);
    const auto c = sweep(p, default_rate_grid());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c.sigma_e2[i] >= 0.0);
        CHECK(c.sigma_e2[i] <= 1.0);
        if (i > 0) CHECK(c.sigma_e2[i] <= c.sigma_e2[i - 1] + 1e-15);
        CHECK(c.gap[i] == doctest::Approx(c.sigma_e2[i] - c.sigma_lb2[i]));
    }
}

TEST_CASE("sweep is independent of worker count") {
    const auto p = build_profile(frequency_lattice(get_lattice("D4")), 10000, 1);
    const auto grid = default_rate_grid();
    const auto a = sweep(p, grid, {}, 1);
    const auto b = sweep(p, grid, {}, 3);
    CHECK(a.sigma_e2 == b.sigma_e2);
    CHECK(a.std_error == b.std_error);
    CHECK(a.lattice_name == p.lattice.name);
    CHECK(sweep(p, grid, "custom").lattice_name == "custom");
}

TEST_CASE("standard error shrinks like 1/sqrt(N)") {
    const auto lat = frequency_lattice(get_lattice("A2"));
    const double rate = 1.7;
    double small = 0.0, large = 0.0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        small += error_variance(build_profile(lat, 5000, 100 + rep), rate).std_error;
        large += error_variance(build_profile(lat, 10000, 200 + rep), rate).std_error;
    }
    CHECK(small / large == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("rate grids") {
    const auto g = default_rate_grid();
    CHECK(g.size() == 601);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == doctest::Approx(2.05).epsilon(1e-15));
    const auto u = uniform_grid(1.0, 2.0, 3);
    CHECK(u == std::vector<double>{1.0, 1.5, 2.0});
    const auto p = constant_profile("Z2", 0.5, 4);
    const std::vector<double> bad{1.0, 1.0};
    CHECK_THROWS_AS(sweep(p, bad), std::invalid_argument);
    const std::vector<double> neg{-1.0, 1.0};
    CHECK_THROWS_AS(sweep(p, neg), std::invalid_argument);
}

TEST_CASE("crossover of synthetic curves") {
    const std::vector<double> rates{1.0, 1.1, 1.2, 1.3, 1.4};
    const auto zero = synthetic(rates, {0, 0, 0, 0, 0}, 0.0);
    SUBCASE("single sign change interpolates linearly") {
        const auto a = synthetic(rates, {-0.2, -0.1, 0.1, 0.2, 0.3}, 0.0);
        const auto x = crossover(a, zero);
        CHECK(x.rate == doctest::Approx(1.15));
        CHECK(x.below == 1);
        CHECK(x.above == 2);
    }
    SUBCASE("no sign change") {
        const auto a = synthetic(rates, {0.1, 0.1, 0.2, 0.2, 0.3}, 0.0);
        CHECK_THROWS_AS(crossover(a, zero), NoCrossoverError);
    }
    SUBCASE("two sign changes") {
        const auto a = synthetic(rates, {-0.1, 0.1, 0.2, -0.1, -0.2}, 0.0);
        try {
            crossover(a, zero);
            FAIL("expected MultipleCrossoverError");
        } catch (const MultipleCrossoverError& e) {
            CHECK(e.candidates.size() == 2);
        }
    }
    SUBCASE("differences inside the noise band carry no sign") {
        const auto a = synthetic(rates, {-0.2, 0.001, -0.001, 0.2, 0.3}, 0.01);
        const auto x = crossover(a, zero);
        CHECK(x.rate > 1.0);
        CHECK(x.rate < 1.3);
    }
    SUBCASE("mismatched grids are rejected") {
        const auto a = synthetic({1.0, 1.1}, {-0.1, 0.1}, 0.0);
        CHECK_THROWS(crossover(a, zero));
    }
}

TEST_CASE("thresholds bracket the zero-gap and zero-error regions") {
    for (const auto* n : {"Z2", "A2", "A3", "D4"}) {
        const auto s = get_lattice(n);
        const auto th = thresholds(s);
        const auto p = build_profile(frequency_lattice(s), 20000, 1);
        INFO(n);
        CHECK(error_variance(p, th.high).value == 0.0);
        CHECK(error_variance(p, th.high * 1.001).value == 0.0);
        const double below = th.low * 0.999;
        const auto e = error_variance(p, below);
        CHECK(std::abs(e.value - lower_bound(s.dim, below)) <= 3.0 * e.std_error + 1e-12);
    }
}
