#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "graphflow/profile.hpp"

using namespace graphflow;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("shrinker rhs on the reference solutions") {
    // Cylinder of radius sqrt(2(n-1)) is a fixed line of the angle equation.
    auto c = shrinker_rhs({std::sqrt(2.0), 5.0, kPi / 2}, 2);
    CHECK(c[2] == doctest::Approx(0.0).epsilon(1e-15));
    // Sphere of radius sqrt(2n): profile curvature 1/R.
    auto s = shrinker_rhs({2.0, 0.0, kPi / 2}, 2);
    CHECK(s[2] == doctest::Approx(0.5));
    // Direct evaluation.
    auto d = shrinker_rhs({1.0, 1.0, 0.0}, 2);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(0.0));
    CHECK(d[2] == doctest::Approx(-0.5));
    CHECK_THROWS_AS(shrinker_rhs({0.0, 0.0, 0.0}, 2), std::domain_error);
    CHECK_THROWS_AS(shrinker_rhs({-1.0, 0.0, 0.0}, 2), std::domain_error);
}

TEST_CASE("cylinder shot never returns and stays on r = sqrt(2)") {
    IntegrateOptions io;
    io.max_arclength = 5.0;
    auto res = integrate_profile({std::sqrt(2.0), 0.0, kPi / 2}, 2, 1e-3, io);
    CHECK(res.outcome == IntegrationOutcome::NoReturn);
    double worst = 0.0;
    for (const auto& p : res.samples)
        worst = std::max(worst, std::abs(p.state.r - std::sqrt(2.0)));
    CHECK(worst < 1e-8);
}

TEST_CASE("sphere shot follows the circle through the axis to the antipode") {
    auto res = integrate_profile({2.0, 0.0, kPi / 2}, 2, 1e-4);
    REQUIRE(res.outcome == IntegrationOutcome::Returned);
    CHECK(res.axis_crossings == 1);
    // End state is the antipodal point of the profile, reached on the
    // reflected branch (represented with r > 0).
    CHECK(res.end_state.r == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(res.end_state.z) < 1e-8);
    double worst = 0.0;
    for (const auto& p : res.samples)
        worst = std::max(worst, std::abs(std::hypot(p.state.r, p.state.z) - 2.0));
    CHECK(worst < 1e-8);
}

TEST_CASE("integration refines at fourth order on a bending arc") {
    const ProfileState start{1.0, 0.0, kPi / 2};
    auto end_r = [&](double h) {
        auto res = integrate_profile(start, 2, h);
        REQUIRE(res.outcome == IntegrationOutcome::Returned);
        return res.end_state.r;
    };
    const double r1 = end_r(4e-3), r2 = end_r(2e-3), r3 = end_r(1e-3);
    const double ratio = (r1 - r2) / (r2 - r3);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("steep dives into the axis are collisions") {
    auto res = integrate_profile({0.3, 0.5, kPi}, 2, 1e-3);
    CHECK(res.outcome == IntegrationOutcome::AxisCollision);
}

TEST_CASE("shooting finds the closed convex torus profile") {
    ShootOptions so;
    so.step = 2e-4;
    so.coarse_step = 4e-4;
    auto torus = shoot_torus(2, so);
    CHECK(std::abs(torus.miss) < so.tol);
    CHECK(torus.inner_radius > 0.0);
    CHECK(torus.inner_radius < torus.outer_radius);
    CHECK(torus.max_height > 0.0);
    CHECK(torus.extinction_time == 1.0);
    // Convex: the signed curvature (theta') never changes sign.
    CHECK(signed_curvature_max(torus) < 0.0);
    CHECK(shrinker_residual_max(torus) < 1e-6);
    CHECK(reflection_asymmetry(torus) < 1e-12);

    SUBCASE("cross sections") {
        auto [zlo, zhi] = torus_cross_section(torus, torus.inner_radius);
        CHECK(std::abs(zhi) < 1e-6);
        CHECK(zlo == doctest::Approx(-zhi));
        double rmid = 0.5 * (torus.inner_radius + torus.outer_radius);
        auto [a, b] = torus_cross_section(torus, rmid);
        CHECK(b > 0.0);
        CHECK(a == doctest::Approx(-b));
        CHECK(b < torus.max_height);
        CHECK_THROWS_AS(torus_cross_section(torus, torus.outer_radius + 0.1),
                        std::domain_error);

        // Independent oracle: re-shoot at 10x resolution and compare widths.
        ShootOptions fine = so;
        fine.step = 2e-5;
        auto dense = shoot_torus(2, fine);
        auto [c, d] = torus_cross_section(dense, rmid);
        CHECK(b == doctest::Approx(d).epsilon(1e-6));
        (void)c;
    }

    SUBCASE("scaling") {
        auto same = scale_torus(torus, torus.outer_radius, torus.max_height);
        CHECK(same.inner_radius == doctest::Approx(torus.inner_radius));
        CHECK(same.extinction_time == doctest::Approx(1.0));

        auto small = scale_torus(torus, 0.45, 0.1);
        CHECK(small.outer_radius <= 0.45 + 1e-12);
        CHECK(small.max_height <= 0.1 + 1e-12);
        const double lam = small.outer_radius / torus.outer_radius;
        CHECK(small.extinction_time == doctest::Approx(lam * lam));

        auto back = scale_torus(small, torus.outer_radius, torus.max_height);
        CHECK(back.inner_radius == doctest::Approx(torus.inner_radius).epsilon(1e-12));
        // Scaling covariance: pointwise lambda-scaling of every sample.
        for (std::size_t k = 0; k < torus.samples.size(); k += 1000) {
            CHECK(small.samples[k].state.r ==
                  doctest::Approx(lam * torus.samples[k].state.r));
            CHECK(small.samples[k].state.z ==
                  doctest::Approx(lam * torus.samples[k].state.z).epsilon(1e-9));
        }
    }
}

TEST_CASE("shooting rejects degenerate brackets") {
    // A bracket around the sphere shot bisects into the axis-crossing branch.
    ShootOptions so;
    so.bracket = {{1.9, 2.1}};
    CHECK_THROWS_WITH_AS(shoot_torus(2, so),
                         doctest::Contains("sphere branch"), std::runtime_error);
    // Constant-sign miss on the bracket.
    ShootOptions flat;
    flat.bracket = {{0.15, 0.3}};
    CHECK_THROWS_WITH_AS(shoot_torus(2, flat),
                         doctest::Contains("does not change sign"), std::runtime_error);
}
