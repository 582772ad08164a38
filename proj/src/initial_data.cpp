#include "graphflow/initial_data.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace graphflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}
} // namespace

double smoothstep01(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smooth_plateau_bump(double x) {
    if (x <= 1.0 / 3.0) return 1.0;
    if (x >= 2.0 / 3.0) return 0.0;
    return 1.0 - smoothstep01(3.0 * x - 1.0);
}

double SpikeLattice::operator()(double x, double y) const {
    const double dx = x - std::round(x);
    const double dy = y - std::round(y);
    return params.h0 * smooth_plateau_bump(std::hypot(dx, dy) / params.ell0);
}

double spike_height_continuum(double ell0) { return 63.0 / (16.0 * kPi * ell0 * ell0); }

double spike_cell_mass(const PeriodicGrid& grid, double ell0) {
    // Nodes aligned with the unit lattice make every spike carry the same
    // discrete mass; summing the bump around a single lattice point on the
    // grid's spacing gives it.
    const double hx = grid.spacing(0), hy = grid.spacing(1);
    const int mx = static_cast<int>(std::ceil(ell0 / hx));
    const int my = static_cast<int>(std::ceil(ell0 / hy));
    double sum = 0.0;
    for (int i = -mx; i <= mx; ++i)
        for (int j = -my; j <= my; ++j)
            sum += smooth_plateau_bump(std::hypot(i * hx, j * hy) / ell0);
    return sum * hx * hy;
}

std::pair<ScalarField, SpikeParams>
build_spiked_u0(const PeriodicGrid& grid, const ProfileCurve& torus,
                const SpikeBuildOptions& opts) {
    if (grid.dim() != 2)
        throw std::invalid_argument("build_spiked_u0: grid must be two-dimensional");
    for (int a = 0; a < 2; ++a) {
        if (!near_integer(grid.extent(a)) || grid.extent(a) < 0.5)
            throw std::invalid_argument(
                "build_spiked_u0: extents must be integer multiples of the unit cell");
        if (!near_integer(1.0 / grid.spacing(a)))
            throw std::invalid_argument(
                "build_spiked_u0: nodes must align with the unit lattice");
    }
    const double ell0 = torus.inner_radius;
    const double h = std::max(grid.spacing(0), grid.spacing(1));
    if (opts.require_resolved && !(ell0 > 6.0 * h))
        throw std::runtime_error("build_spiked_u0: unresolved spike (ell0 <= 6 h)");

    SpikeParams params;
    params.ell0 = ell0;
    const double mass = spike_cell_mass(grid, ell0);
    if (!(mass > 0.0))
        throw std::runtime_error("build_spiked_u0: unresolved spike (no support nodes)");
    params.h0 = 1.0 / mass;
    if (!(params.h0 > 2.0 * torus.max_height))
        throw std::runtime_error(
            "build_spiked_u0: incompatible torus scale (h0 <= 2 delta0); scale the torus smaller");

    ScalarField field(grid);
    const SpikeLattice spike{params};
    field.fill([&](double x, double y) { return spike(x, y); });
    return {std::move(field), params};
}

double factorial_of(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
}

void SlabLayout::validate() const {
    if (!(ell > 0.0 && ell < 0.25))
        throw std::invalid_argument("SlabLayout: ell must lie in (0, 1/4)");
    if (m_max < 2) throw std::invalid_argument("SlabLayout: m_max must be >= 2");
    if (!(a < b)) throw std::invalid_argument("SlabLayout: need a < b");
}

std::pair<double, double> SlabLayout::interval(int m) const {
    if (m == 0) return {0.0, 1.0 - ell};
    return {factorial_of(m) + ell, factorial_of(m + 1) - ell};
}

std::pair<double, double> SlabLayout::even_slab(int k) const {
    return {factorial_of(2 * k) - 0.25, factorial_of(2 * k + 1) + 0.25};
}

std::pair<double, double> SlabLayout::odd_slab(int k) const {
    return {factorial_of(2 * k + 1) + 0.25, factorial_of(2 * k + 2) - 0.25};
}

double SlabLayout::domain_requirement() const { return factorial_of(m_max + 1); }

double phi0(const SlabLayout& layout, double x1) {
    const double t = std::abs(x1);
    if (t <= 1.0 - layout.ell) return layout.b;
    for (int m = 1; m <= layout.m_max; ++m) {
        const double fm = factorial_of(m);
        if (t < fm + layout.ell) {
            // transition band [m! - ell, m! + ell]
            const double s = (t - (fm - layout.ell)) / (2.0 * layout.ell);
            const double from = layout.level(m - 1), to = layout.level(m);
            return from + (to - from) * smoothstep01(s);
        }
        if (t <= factorial_of(m + 1) - layout.ell) return layout.level(m);
    }
    return layout.tail_level();
}

double Phi0Plus::operator()(double x1) const {
    const double t = std::abs(x1);
    const double top = 1.0 + rho0;
    // One eps well per odd interval I_{2k+1} kept by the truncation; the
    // k = 0 well degenerates to the single point |x1| = 3/2.
    for (int k = 0; 2 * k + 1 <= m_max; ++k) {
        const double pa = factorial_of(2 * k + 1) + 0.25; // plateau ends
        const double ea = factorial_of(2 * k + 1) + 0.5;  // eps begins
        const double eb = factorial_of(2 * k + 2) - 0.5;  // eps ends
        const double pb = factorial_of(2 * k + 2) - 0.25; // next plateau begins
        if (t <= pa) return top;
        if (t < ea) return top + (eps - top) * smoothstep01((t - pa) / 0.25);
        if (t <= eb) return eps;
        if (t < pb) return eps + (top - eps) * smoothstep01((t - eb) / 0.25);
    }
    return top;
}

Phi0Plus build_phi0_plus(double eps, double rho0, const SlabLayout& layout) {
    if (!(eps > 0.0) || !(rho0 > 0.0))
        throw std::invalid_argument("build_phi0_plus: eps and rho0 must be positive");
    return Phi0Plus{eps, rho0, layout.m_max};
}

bool W0Graph::spike_site(long long i) const {
    const double t = std::abs(static_cast<double>(i));
    for (int k = 1; 2 * k + 1 <= layout.m_max; ++k) {
        const auto [lo, hi] = layout.odd_slab(k);
        if (t >= lo + spike.ell0 && t <= hi - spike.ell0) return true;
    }
    return false;
}

double W0Graph::operator()(double x1, double x2) const {
    double v = phi0(layout, x1);
    const long long i = static_cast<long long>(std::llround(x1));
    if (std::abs(x1 - static_cast<double>(i)) <= spike.ell0 && spike_site(i)) {
        const double dy = x2 - std::round(x2);
        const double d = std::hypot(x1 - static_cast<double>(i), dy);
        v += spike.h0 * smooth_plateau_bump(d / spike.ell0);
    }
    return v;
}

W0Build build_w0(const PeriodicGrid& grid, const SlabLayout& layout,
                 const ProfileCurve& torus, const SpikeBuildOptions& opts) {
    layout.validate();
    if (grid.dim() != 2)
        throw std::invalid_argument("build_w0: grid must be two-dimensional");
    if (!near_integer(grid.extent(1)) || std::llround(grid.extent(1)) != 1)
        throw std::invalid_argument("build_w0: x2 period must be 1");
    if (std::abs(grid.origin(0) + 0.5 * grid.extent(0)) > 1e-9)
        throw std::invalid_argument("build_w0: x1 period must be centered on 0");
    for (int a = 0; a < 2; ++a)
        if (!near_integer(1.0 / grid.spacing(a)))
            throw std::invalid_argument("build_w0: nodes must align with the unit lattice");
    const double half_width = 0.5 * grid.extent(0);
    if (half_width < layout.domain_requirement() + 1.0)
        throw std::invalid_argument(
            "build_w0: x1 half-width must cover (m_max + 1)! plus a buffer plateau");

    const double ell0 = torus.inner_radius;
    const double h = std::max(grid.spacing(0), grid.spacing(1));
    if (opts.require_resolved && !(ell0 > 6.0 * h))
        throw std::runtime_error("build_w0: unresolved spike (ell0 <= 6 h)");

    W0Build out{ScalarField(grid), SpikeParams{}, W0Graph{}, {}, {}};
    out.spike.ell0 = ell0;
    const double mass = spike_cell_mass(grid, ell0);
    if (!(mass > 0.0)) throw std::runtime_error("build_w0: unresolved spike (no support nodes)");
    out.spike.h0 = 1.0 / mass;
    if (!(out.spike.h0 > 2.0 * torus.max_height))
        throw std::runtime_error("build_w0: incompatible torus scale (h0 <= 2 delta0)");

    out.analytic = W0Graph{layout, out.spike};

    // Enumerate placed and skipped lattice points on the positive half-axis.
    for (int k = 1; 2 * k + 1 <= layout.m_max; ++k) {
        const auto [lo, hi] = layout.odd_slab(k);
        if (lo > half_width) break;
        for (long long i = static_cast<long long>(std::ceil(lo));
             i <= static_cast<long long>(std::floor(std::min(hi, half_width))); ++i) {
            if (i >= lo + ell0 && i <= hi - ell0)
                out.sites.push_back(i);
            else
                out.skipped_sites.push_back(i);
        }
    }

    out.field.fill([&](double x, double y) { return out.analytic(x, y); });
    return out;
}

} // namespace graphflow
