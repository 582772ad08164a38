// Analytically evolving barriers (self-similar tori, round spheres) and the
// clearance and region-bound scans that certify disjointness from an evolved
// graph.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "graphflow/grid.hpp"
#include "graphflow/profile.hpp"

namespace graphflow {

// A torus centered at base point `center_base` lifted to height
// `center_height`, shrinking self-similarly to its center with scale
// mu(t) = sqrt(1 - t / t_star).
struct TorusBarrier {
    ProfileSection section;
    std::array<double, 2> center_base{0.0, 0.0};
    double center_height = 0.0;
    double ell0 = 0.0;
    double r0 = 0.0;
    double t_star = 1.0;
};

// Rests the scaled torus on the base plane: center height = max_height.
TorusBarrier make_torus_barrier(const ProfileCurve& scaled_profile,
                                std::array<double, 2> center_base);

struct TorusAtTime {
    double scale;  // mu(t)
    double ell_t;
    double r_t;
};

// Radii at time t; throws std::domain_error("extinct") for t >= t_star.
TorusAtTime torus_at_time(const TorusBarrier& b, double t);

// Vertical band [z_lo, z_hi] the torus occupies above base radius rho at
// time t. Requires ell_t <= rho <= r_t.
std::pair<double, double> torus_band(const TorusBarrier& b, double t, double rho);

// Minimum over grid nodes in the annulus ell_t <= |x - m| <= r_t of the
// signed vertical gap between u(x) and the torus band: positive outside the
// band, negative inside. +infinity when no node lies in the annulus.
double clearance_graph_torus(const ScalarField& u, const TorusBarrier& b, double t);

struct SphereBarrier {
    std::array<double, 2> center_base{0.0, 0.0};
    double center_height = 0.0;
    double rho0 = 0.1;
    int n = 2;

    double extinction_time() const { return rho0 * rho0 / (2.0 * n); }
    double radius(double t) const; // sqrt(rho0^2 - 2 n t); throws when extinct
};

// Minimum over nodes in the sphere's base shadow of the Euclidean distance
// from (x, u(x)) to the center minus the radius. +infinity for empty shadows.
double clearance_graph_sphere(const ScalarField& u, const SphereBarrier& b, double t);

// Region scans: nodes outside every ball B_{exclusion_radius}(center),
// optionally restricted to |x1| in a band. An empty centers list or zero
// radius scans everything.
struct RegionOmega {
    double exclusion_radius = 0.0;
    std::vector<std::array<double, 2>> centers;
    std::optional<std::array<double, 2>> x1_band;
};

struct RegionCheckResult {
    bool pass = true;
    double max_value = 0.0;
    std::array<double, 2> location{0.0, 0.0};
    long long nodes_scanned = 0;
};

// Scans the region; pass iff every value < bound. Empty regions pass with
// max_value = -infinity.
RegionCheckResult check_region_bound(const ScalarField& u, const RegionOmega& region,
                                     double bound);

} // namespace graphflow
