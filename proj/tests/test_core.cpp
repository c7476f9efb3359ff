#include "rebgk/core.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace rebgk;

namespace {

Mixture case1_mixture() {
    return Mixture{SpeciesParams{1, 2.0, 1.0, 3.0}, SpeciesParams{2, 1.0, 1.0, 2.0},
                   SpeciesParams{3, 3.0, 1.0, 1.0}, SpeciesParams{4, 1.0, 1.0, 4.0}};
}

}  // namespace

TEST_CASE("make_grid nodes, weights and energies") {
    PhysicalConstants pc;
    auto mix = case1_mixture();

    auto g = make_grid(-1.0, 1.0, 3, mix, pc);
    CHECK(g.nodes()[0] == -1.0);
    CHECK(g.nodes()[1] == 0.0);
    CHECK(g.nodes()[2] == 1.0);
    CHECK(g.dp() == 1.0);
    CHECK(g.weights()[0] == 0.5);
    CHECK(g.weights()[1] == 1.0);
    CHECK(g.weights()[2] == 0.5);

    // rest energy at p = 0: p0 = c m
    CHECK(g.energies(0)[1] == 2.0);
    CHECK(g.energies(1)[1] == 1.0);
    CHECK(g.energies(2)[1] == 3.0);

    auto gd = make_grid(-30.0, 30.0, 1201, mix, pc);
    CHECK(gd.dp() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(gd.size() == 1201);
    CHECK(gd.nodes().back() == 30.0);

    // c != 1 keeps the constants symbolic: p0(0) = c m
    PhysicalConstants pc2{2.0, 1.0, 1.0};
    auto g2 = make_grid(-1.0, 1.0, 3, mix, pc2);
    CHECK(g2.energies(0)[1] == 4.0);
}

TEST_CASE("grid symmetry and energy lower bound") {
    PhysicalConstants pc;
    auto mix = case1_mixture();
    auto g = make_grid(-30.0, 30.0, 1201, mix, pc);
    const auto& p = g.nodes();
    const std::size_t n = g.size();
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(p[j] == -p[n - 1 - j]);
        for (std::size_t i = 0; i < 4; ++i) {
            const double floor = pc.c * mix[i].mass;
            if (p[j] == 0.0)
                CHECK(g.energies(i)[j] == floor);
            else
                CHECK(g.energies(i)[j] > floor);
        }
    }
}

TEST_CASE("make_grid rejects bad input") {
    PhysicalConstants pc;
    auto mix = case1_mixture();
    CHECK_THROWS_AS(make_grid(1.0, -1.0, 11, mix, pc), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 1.0, 2, mix, pc), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-INFINITY, 1.0, 11, mix, pc), std::invalid_argument);
    auto bad = mix;
    bad[2].mass = -3.0;
    CHECK_THROWS_AS(make_grid(-1.0, 1.0, 11, bad, pc), std::invalid_argument);
}

TEST_CASE("validate_state reports violations") {
    PhysicalConstants pc;
    auto mix = case1_mixture();
    auto g = make_grid(-5.0, 5.0, 11, mix, pc);

    DistributionState s;
    s.t = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        s.f[i].resize(g.size());
        for (std::size_t j = 0; j < g.size(); ++j)
            s.f[i][j] = std::exp(-g.energies(i)[j]);
    }
    CHECK(validate_state(s, g).empty());

    auto neg = s;
    neg.f[1][3] = -1e-9;
    auto v = validate_state(neg, g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("negative") != std::string::npos);

    auto zero = s;
    for (auto& fi : zero.f)
        for (auto& x : fi) x = 0.0;
    v = validate_state(zero, g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("identically zero") != std::string::npos);

    auto nan = s;
    nan.f[0][0] = NAN;
    CHECK(!validate_state(nan, g).empty());

    auto shape = s;
    shape.f[2].resize(3);
    CHECK(!validate_state(shape, g).empty());
}

TEST_CASE("mixture accessors") {
    auto mix = case1_mixture();
    CHECK(mass_defect(mix) == -1.0);
    CHECK(degeneracy_ratio(mix) == 1.0);
}
