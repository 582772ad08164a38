#include <doctest.h>

#include <cmath>

#include "graphflow/grid.hpp"

using namespace graphflow;

TEST_CASE("grid wrap and coordinates") {
    auto g = PeriodicGrid::plane({1.0, 2.0}, {8, 16}, {-0.5, 0.0});
    CHECK(g.dim() == 2);
    CHECK(g.spacing(0) == doctest::Approx(0.125));
    CHECK(g.spacing(1) == doctest::Approx(0.125));
    CHECK(g.wrap(0, -1) == 7);
    CHECK(g.wrap(0, 8) == 0);
    CHECK(g.coord(0, 0) == doctest::Approx(-0.5));
    CHECK(g.size() == 128);
}

TEST_CASE("grid validation") {
    CHECK_THROWS(PeriodicGrid::line(1.0, 4));
    CHECK_THROWS(PeriodicGrid::plane({0.0, 1.0}, {8, 8}));
    CHECK_THROWS(PeriodicGrid(3, {1, 1}, {8, 8}));
}

TEST_CASE("periodic distance uses the shortest image") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {10, 10}, {-0.5, -0.5});
    // Node (0,0) is at (-0.5,-0.5); distance to (0.45,-0.5) wraps.
    CHECK(g.periodic_distance(0, 0, {0.45, -0.5}) == doctest::Approx(0.05));
    auto ij = g.nearest_node({0.48, 0.0});
    // 0.48 wraps to the -0.5 node.
    CHECK(ij[0] == 0);
}

TEST_CASE("field fill, extrema, mean") {
    auto g = PeriodicGrid::line(1.0, 64);
    ScalarField f(g);
    f.fill([](double x, double) { return std::sin(2.0 * M_PI * x); });
    CHECK(f.sup() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(f.inf() == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(f.mean() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.all_finite());
    f.at(3) = std::nan("");
    CHECK_FALSE(f.all_finite());
}
