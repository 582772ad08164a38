#include "graphflow/barriers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphflow {

TorusBarrier make_torus_barrier(const ProfileCurve& scaled_profile,
                                std::array<double, 2> center_base) {
    TorusBarrier b;
    b.section = ProfileSection(scaled_profile);
    b.center_base = center_base;
    b.center_height = scaled_profile.max_height;
    b.ell0 = scaled_profile.inner_radius;
    b.r0 = scaled_profile.outer_radius;
    b.t_star = scaled_profile.extinction_time;
    return b;
}

TorusAtTime torus_at_time(const TorusBarrier& b, double t) {
    if (t < 0.0) throw std::domain_error("torus_at_time: negative time");
    if (t >= b.t_star) throw std::domain_error("torus_at_time: extinct");
    const double mu = std::sqrt(1.0 - t / b.t_star);
    return {mu, mu * b.ell0, mu * b.r0};
}

std::pair<double, double> torus_band(const TorusBarrier& b, double t, double rho) {
    const auto at = torus_at_time(b, t);
    const double zp = at.scale * b.section.upper(rho / at.scale);
    return {b.center_height - zp, b.center_height + zp};
}

double clearance_graph_torus(const ScalarField& u, const TorusBarrier& b, double t) {
    const auto at = torus_at_time(b, t);
    const auto& g = u.grid();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.count(0); ++i) {
        for (int j = 0; j < g.count(1); ++j) {
            const double rho = g.periodic_distance(i, j, b.center_base);
            if (rho < at.ell_t || rho > at.r_t) continue;
            const double zp = at.scale * b.section.upper(rho / at.scale);
            const double lo = b.center_height - zp, hi = b.center_height + zp;
            const double v = u.at(i, j);
            double gap;
            if (v <= lo)
                gap = lo - v;
            else if (v >= hi)
                gap = v - hi;
            else
                gap = -std::min(v - lo, hi - v);
            best = std::min(best, gap);
        }
    }
    return best;
}

double SphereBarrier::radius(double t) const {
    if (t < 0.0) throw std::domain_error("SphereBarrier: negative time");
    const double rr = rho0 * rho0 - 2.0 * n * t;
    if (rr <= 0.0) throw std::domain_error("SphereBarrier: extinct");
    return std::sqrt(rr);
}

double clearance_graph_sphere(const ScalarField& u, const SphereBarrier& b, double t) {
    const double rad = b.radius(t);
    const auto& g = u.grid();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.count(0); ++i) {
        for (int j = 0; j < g.count(1); ++j) {
            const double d_base = g.periodic_distance(i, j, b.center_base);
            if (d_base > rad) continue;
            const double dz = u.at(i, j) - b.center_height;
            best = std::min(best, std::hypot(d_base, dz) - rad);
        }
    }
    return best;
}

RegionCheckResult check_region_bound(const ScalarField& u, const RegionOmega& region,
                                     double bound) {
    const auto& g = u.grid();
    RegionCheckResult res;
    res.max_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.count(0); ++i) {
        const double x1 = g.coord(0, i);
        if (region.x1_band) {
            const double t = std::abs(x1);
            if (t < (*region.x1_band)[0] || t > (*region.x1_band)[1]) continue;
        }
        for (int j = 0; j < g.count(1); ++j) {
            bool inside_ball = false;
            if (region.exclusion_radius > 0.0) {
                for (const auto& c : region.centers) {
                    if (g.periodic_distance(i, j, c) <= region.exclusion_radius) {
                        inside_ball = true;
                        break;
                    }
                }
            }
            if (inside_ball) continue;
            ++res.nodes_scanned;
            const double v = u.at(i, j);
            if (v > res.max_value) {
                res.max_value = v;
                res.location = {x1, g.dim() == 2 ? g.coord(1, j) : 0.0};
            }
        }
    }
    res.pass = res.max_value < bound;
    return res;
}

} // namespace graphflow
