#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "graphflow/pde.hpp"

using namespace graphflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Smooth random periodic test data: a fixed-seed trigonometric polynomial,
// so the exact derivatives are available as oracles.
struct TrigPoly {
    struct Mode {
        int kx, ky;
        double a, b;
    };
    std::vector<Mode> modes;
    double lx, ly;

    static TrigPoly random(unsigned seed, double lx, double ly, double amp = 0.3) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        TrigPoly p{{}, lx, ly};
        for (int kx = -2; kx <= 2; ++kx)
            for (int ky = 0; ky <= 2; ++ky) {
                if (kx == 0 && ky == 0) continue;
                const double w = amp / (1.0 + kx * kx + ky * ky);
                p.modes.push_back({kx, ky, w * gauss(rng), w * gauss(rng)});
            }
        return p;
    }
    double operator()(double x, double y) const {
        double s = 0.0;
        for (const auto& m : modes) {
            const double ph = 2.0 * kPi * (m.kx * x / lx + m.ky * y / ly);
            s += m.a * std::cos(ph) + m.b * std::sin(ph);
        }
        return s;
    }
    double dx(double x, double y) const {
        double s = 0.0;
        for (const auto& m : modes) {
            const double w = 2.0 * kPi * m.kx / lx;
            const double ph = 2.0 * kPi * (m.kx * x / lx + m.ky * y / ly);
            s += w * (-m.a * std::sin(ph) + m.b * std::cos(ph));
        }
        return s;
    }
};

double reaper_capped(double x) {
    // Exact grim reaper on |x| <= 1.45, blended to a flat cap near the walls
    // of the [-pi, pi) cell so the periodic extension stays C^2.
    const double x1 = 1.45, x2 = 1.55;
    const double cap = -std::log(std::cos(x2));
    const double ax = std::abs(x);
    if (ax >= x2) return cap;
    const double v = -std::log(std::cos(ax));
    if (ax <= x1) return v;
    const double s = (ax - x1) / (x2 - x1);
    const double w = 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    return w * v + (1.0 - w) * cap;
}

} // namespace

TEST_CASE("gradient: constants, Fourier mode, random trig polynomial") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {64, 64});
    ScalarField c(g, 3.5);
    auto gc = gradient(c);
    CHECK(gc[0].sup() == 0.0);
    CHECK(gc[1].inf() == 0.0);

    ScalarField s(g);
    s.fill([](double x, double) { return std::sin(2.0 * kPi * x); });
    auto gs = gradient(s);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i)
        worst = std::max(worst, std::abs(gs[0].at(i, 7) -
                                         2.0 * kPi * std::cos(2.0 * kPi * g.coord(0, i))));
    CHECK(worst < 2.0 * kPi * (2.0 * kPi / 64) * (2.0 * kPi / 64));

    // Refinement study against the exact derivative: second order.
    auto p = TrigPoly::random(20240517, 1.0, 1.0);
    auto err_at = [&](int n) {
        auto gg = PeriodicGrid::plane({1.0, 1.0}, {n, n});
        ScalarField f(gg);
        f.fill([&](double x, double y) { return p(x, y); });
        auto gd = gradient(f);
        double e = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                e = std::max(e, std::abs(gd[0].at(i, j) - p.dx(gg.coord(0, i), gg.coord(1, j))));
        return e;
    };
    const double ratio = err_at(64) / err_at(128);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("mcf rhs: stationary constants and the grim reaper translator") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {32, 32});
    ScalarField c(g, 7.0);
    auto r = mcf_rhs(c);
    CHECK(r.sup() == 0.0);
    CHECK(r.inf() == 0.0);

    auto g1 = PeriodicGrid::line(2.0 * kPi, 1024, -kPi);
    ScalarField u(g1);
    u.fill([](double x, double) { return reaper_capped(x); });
    auto rr = mcf_rhs(u);
    double worst = 0.0;
    for (int i = 0; i < 1024; ++i)
        if (std::abs(g1.coord(0, i)) < 1.0)
            worst = std::max(worst, std::abs(rr.at(i) - 1.0));
    CHECK(worst < 5e-4);
}

TEST_CASE("csf rhs equals dim-1 mcf rhs bitwise and rejects dim 2") {
    auto g1 = PeriodicGrid::line(1.0, 128);
    auto p = TrigPoly::random(7, 1.0, 1.0);
    ScalarField u(g1);
    u.fill([&](double x, double) { return p(x, 0.1); });
    auto a = csf_rhs(u);
    auto b = mcf_rhs(u);
    for (int i = 0; i < 128; ++i) CHECK(a.at(i) == b.at(i));

    auto g2 = PeriodicGrid::plane({1.0, 1.0}, {16, 16});
    ScalarField v(g2);
    CHECK_THROWS_AS(csf_rhs(v), std::invalid_argument);
}

TEST_CASE("heat rhs: eigenfunction and telescoping sum") {
    auto g = PeriodicGrid::line(1.0, 256);
    ScalarField u(g);
    u.fill([](double x, double) { return std::sin(2.0 * kPi * x); });
    auto r = heat_rhs(u);
    const double lam = 4.0 * kPi * kPi;
    for (int i = 0; i < 256; i += 37)
        CHECK(r.at(i) == doctest::Approx(-lam * u.at(i)).epsilon(1e-3));

    // Discrete divergence theorem: the grid sum telescopes to zero.
    auto p = TrigPoly::random(99, 1.0, 1.0);
    auto g2 = PeriodicGrid::plane({1.0, 1.0}, {48, 48});
    ScalarField w(g2);
    w.fill([&](double x, double y) { return 5.0 * p(x, y); });
    auto rw = heat_rhs(w);
    double sum = 0.0, scale = 0.0;
    for (double v : rw.values()) {
        sum += v;
        scale += std::abs(v);
    }
    CHECK(std::abs(sum) <= 1e-10 * std::max(1.0, scale));
}

TEST_CASE("stable_dt formula and cap") {
    auto g2 = PeriodicGrid::plane({1.0, 1.0}, {100, 100}); // h = 0.01
    FlowParams p;
    p.kind = FlowKind::Heat;
    p.cfl_safety = 0.5;
    CHECK(stable_dt(g2, p) == doctest::Approx(1.25e-5));
    p.dt_cap = 1e-6;
    CHECK(stable_dt(g2, p) == doctest::Approx(1e-6));

    auto g1 = PeriodicGrid::line(1.0, 10); // h = 0.1
    FlowParams q;
    q.cfl_safety = 1.0;
    CHECK(stable_dt(g1, q) == doctest::Approx(0.005));
}

TEST_CASE("heat run reproduces the exact Fourier decay") {
    auto g = PeriodicGrid::line(1.0, 256);
    ScalarField u0(g);
    u0.fill([](double x, double) { return std::sin(2.0 * kPi * x); });
    FlowParams p;
    p.kind = FlowKind::Heat;
    p.t_end = 0.05;
    p.cfl_safety = 0.2;
    p.record_every = 0.01;
    auto res = run(u0, p);
    REQUIRE(res.completed);
    const double amp = 0.5 * (res.field.sup() - res.field.inf());
    const double expect = std::exp(-4.0 * kPi * kPi * 0.05);
    CHECK(expect == doctest::Approx(0.13887).epsilon(1e-3));
    CHECK(std::abs(amp - expect) < 0.01 * expect);
}

TEST_CASE("mcf run: constant data is bitwise stationary") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {16, 16});
    ScalarField u0(g, 7.0);
    FlowParams p;
    p.kind = FlowKind::Mcf;
    p.t_end = 0.01;
    p.record_every = 0.005;
    auto res = run(u0, p);
    REQUIRE(res.completed);
    for (double v : res.field.values()) CHECK(v == 7.0);
}

TEST_CASE("mcf run translates the grim reaper at unit speed") {
    auto g = PeriodicGrid::line(2.0 * kPi, 256, -kPi);
    ScalarField u0(g);
    u0.fill([](double x, double) { return reaper_capped(x); });
    FlowParams p;
    p.kind = FlowKind::Mcf;
    p.t_end = 0.02;
    p.cfl_safety = 0.45;
    p.record_every = 0.01;
    auto res = run(u0, p, {{0.0, 0.0}});
    REQUIRE(res.completed);
    const double delta = res.series.rows.back()[res.series.column_index("probe0")] -
                         res.series.rows.front()[res.series.column_index("probe0")];
    CHECK(delta == doctest::Approx(0.02).epsilon(0.01));
}

TEST_CASE("empirical maximum principle and comparison ordering") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {48, 48});
    for (unsigned seed : {1u, 2u, 3u}) {
        auto p = TrigPoly::random(seed, 1.0, 1.0);
        auto q = TrigPoly::random(seed + 1000, 1.0, 1.0);
        ScalarField u0(g), v0(g);
        u0.fill([&](double x, double y) { return p(x, y); });
        v0.fill([&](double x, double y) { return p(x, y) + 0.05 + 0.2 * (1.0 + q(x, y)); });
        REQUIRE(v0.inf() - u0.inf() > 0.0);

        for (FlowKind kind : {FlowKind::Mcf, FlowKind::Heat}) {
            FlowParams fp;
            fp.kind = kind;
            fp.t_end = 0.01;
            fp.record_every = 0.001;
            auto ru = run(u0, fp);
            auto rv = run(v0, fp);
            REQUIRE(ru.completed);
            // sup non-increasing, inf non-decreasing along records
            const auto sup = ru.series.column("sup");
            const auto inf = ru.series.column("inf");
            for (std::size_t k = 1; k < sup.size(); ++k) {
                CHECK(sup[k] <= sup[k - 1] + 1e-10);
                CHECK(inf[k] >= inf[k - 1] - 1e-10);
            }
            // ordered data stays ordered
            double worst = 0.0;
            for (std::size_t i = 0; i < ru.field.values().size(); ++i)
                worst = std::min(worst, rv.field.values()[i] - ru.field.values()[i]);
            CHECK(worst >= -1e-10);
        }
    }
}

TEST_CASE("heat run conserves the grid mean") {
    auto g = PeriodicGrid::plane({1.0, 1.0}, {64, 64});
    auto p = TrigPoly::random(5, 1.0, 1.0);
    ScalarField u0(g);
    u0.fill([&](double x, double y) { return 1.0 + p(x, y); });
    FlowParams fp;
    fp.kind = FlowKind::Heat;
    fp.t_end = 0.05;
    fp.record_every = 0.01;
    auto res = run(u0, fp);
    REQUIRE(res.completed);
    const auto mean = res.series.column("mean");
    for (double m : mean) CHECK(std::abs(m - mean.front()) < 1e-9 * std::abs(mean.front()));
}

TEST_CASE("run aborts on overflow with the last good state intact") {
    auto g = PeriodicGrid::line(1.0, 64);
    ScalarField u0(g);
    // Alternating near-max doubles: the discrete Laplacian overflows.
    for (int i = 0; i < 64; ++i) u0.at(i) = (i % 2 ? 1.0 : -1.0) * 1e307;
    FlowParams fp;
    fp.kind = FlowKind::Heat;
    fp.t_end = 1e-4;
    fp.record_every = 1e-5;
    auto res = run(u0, fp);
    REQUIRE_FALSE(res.completed);
    CHECK(res.t_reached < 1e-4);
    CHECK(res.message.find("non-finite") != std::string::npos);
    CHECK(res.field.all_finite());
    CHECK(res.field.values() == u0.values());
}

TEST_CASE("explicit record schedule is honored") {
    auto g = PeriodicGrid::line(1.0, 64);
    ScalarField u0(g, 1.0);
    FlowParams fp;
    fp.kind = FlowKind::Heat;
    fp.t_end = 0.01;
    fp.record_times = {0.0, 0.003, 0.0071, 0.01};
    auto res = run(u0, fp);
    REQUIRE(res.series.rows.size() == 4);
    auto ts = res.series.times();
    for (std::size_t k = 0; k < ts.size(); ++k)
        CHECK(ts[k] >= fp.record_times[k] - 1e-15);
    for (std::size_t k = 1; k < ts.size(); ++k) CHECK(ts[k] > ts[k - 1]);
}
