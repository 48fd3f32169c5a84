#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "latsamp/errors.hpp"
#include "latsamp/lattice_catalog.hpp"
#include "oracles.hpp"

using namespace latsamp;

namespace {

// Reference threshold values, typed in from their closed forms.
const std::map<std::string, std::pair<double, double>> kExpectedThresholds = {
    {"Z1", {2.0, 2.0}},
    {"Z2", {1.4142135623730951, 2.0}},
    {"A2", {1.6118548977353127, 1.8612097182041991}},
    {"Z3", {1.1547005383792517, 2.0}},
    {"A3_dual", {1.2599210498948732, 1.7817974362806785}},
    {"A3", {1.4198146639022282, 1.8329728493314703}},
    {"Z4", {1.0, 2.0}},
    {"D4", {1.1892071150027210, 1.6817928305074290}},
    {"A4", {1.2930006815315509, 1.8285790999795744}},
    {"Z8", {0.70710678118654752, 2.0}},
    {"E8", {1.0, 1.4142135623730951}},
    {"A8", {1.0128070772016011, 1.8491242752806438}},
};

Mat random_orthogonal(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("every catalog name resolves and unknown names throw") {
    CHECK(catalog_names().size() == 16);
    CHECK(table_lattice_names().size() == 12);
    for (const auto& n : catalog_names()) {
        const auto s = get_lattice(n);
        CHECK(s.name == n);
        CHECK(s.generator.rows() == s.dim);
        CHECK(s.generator.cols() == s.dim);
    }
    CHECK_THROWS_AS(get_lattice("B7"), UnknownLatticeError);
    CHECK_THROWS_AS(get_lattice(""), UnknownLatticeError);
}

TEST_CASE("cell volume equals |det G|") {
    for (const auto& n : catalog_names()) {
        const auto s = get_lattice(n);
        INFO(n);
        CHECK(s.cell_volume == doctest::Approx(std::abs(s.generator.determinant())).epsilon(1e-12));
    }
}

TEST_CASE("packing radius is half the shortest vector from a coefficient box scan") {
    for (const auto& n : catalog_names()) {
        const auto s = get_lattice(n);
        INFO(n);
        const int box = s.dim >= 8 ? 2 : 3;
        CHECK(s.packing_radius == doctest::Approx(0.5 * oracle::shortest_vector(s.generator, box)).epsilon(1e-12));
    }
}

TEST_CASE("thresholds match the reference table") {
    for (const auto& n : table_lattice_names()) {
        const auto t = normalized_thresholds(get_lattice(n));
        const auto& want = kExpectedThresholds.at(n);
        INFO(n);
        CHECK(std::abs(t.low / want.first - 1.0) <= 1e-9);
        CHECK(std::abs(t.high / want.second - 1.0) <= 1e-9);
    }
}

TEST_CASE("duality is an involution and volumes multiply to one") {
    for (const auto& n : catalog_names()) {
        const auto s = get_lattice(n);
        const auto dd = dual_lattice(dual_lattice(s));
        INFO(n);
        CHECK((dd.generator - s.generator).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(s.cell_volume * dual_lattice(s).cell_volume == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dual_name(dual_name(n)) == n);
    }
    CHECK(dual_name("A3") == "A3_dual");
    CHECK(dual_name("E8") == "E8");
}

TEST_CASE("dual of a catalog lattice agrees with its catalog partner") {
    for (const auto* n : {"A2", "A3", "D4", "A4", "A8"}) {
        const auto d = dual_lattice(get_lattice(n));
        const auto c = get_lattice(dual_name(n));
        INFO(n);
        CHECK(d.cell_volume == doctest::Approx(c.cell_volume).epsilon(1e-12));
        CHECK(d.packing_radius == doctest::Approx(c.packing_radius).epsilon(1e-12));
        CHECK(d.covering_radius == doctest::Approx(c.covering_radius).epsilon(1e-12));
    }
}

TEST_CASE("relevant vector counts") {
    const std::map<std::string, std::size_t> counts = {
        {"Z1", 2}, {"Z2", 4}, {"A2", 6}, {"Z3", 6}, {"A3", 12}, {"A3_dual", 14},
        {"D4", 24}, {"A4", 20}, {"E8", 240}, {"A8", 72}, {"A8_dual", 510}, {"Z8", 16},
    };
    for (const auto& [n, k] : counts) {
        INFO(n);
        CHECK(get_lattice(n).relevant_vectors.size() == k);
    }
}

TEST_CASE("short-vector enumeration finds the E8 root system") {
    const auto e8 = get_lattice("E8");
    const auto vs = enumerate_short_vectors(e8.generator, std::sqrt(2.0));
    CHECK(vs.size() == 241);  // 240 roots and the origin
}

TEST_CASE("thresholds are invariant under scaling and rotation") {
    for (const auto* n : {"A2", "A3_dual", "D4", "E8"}) {
        const auto s = get_lattice(n);
        const auto base = normalized_thresholds(s);
        const auto sc = normalized_thresholds(scaled(s, 3.7));
        const auto rot = normalized_thresholds(rotated(s, random_orthogonal(s.dim, 5)));
        INFO(n);
        CHECK(sc.low == doctest::Approx(base.low).epsilon(1e-12));
        CHECK(sc.high == doctest::Approx(base.high).epsilon(1e-12));
        CHECK(rot.low == doctest::Approx(base.low).epsilon(1e-12));
        CHECK(rot.high == doctest::Approx(base.high).epsilon(1e-12));
    }
}

TEST_CASE("unit-volume rescaling") {
    for (const auto& n : catalog_names()) {
        const auto u = with_unit_volume(get_lattice(n));
        INFO(n);
        CHECK(std::abs(u.generator.determinant()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(u.cell_volume == 1.0);
    }
}

TEST_CASE("singular generator is rejected") {
    auto s = get_lattice("Z2");
    s.generator.row(1) = s.generator.row(0);
    CHECK_THROWS_AS(dual_lattice(s), SingularGeneratorError);
    CHECK_THROWS_AS(enumerate_short_vectors(s.generator, 1.0), SingularGeneratorError);
}
