// Construction of the initial graphs: the unit-mass spike lattice, the
// factorially spaced plateau oscillator phi0, the product graph w0, and the
// upper-barrier profile phi0+. All constructions are C^2.
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "graphflow/grid.hpp"
#include "graphflow/profile.hpp"

namespace graphflow {

// Quintic smoothstep s^3 (10 - 15 s + 6 s^2), clamped to [0, 1]. C^2 when
// glued to constants at both ends; value 1/2 at s = 1/2.
double smoothstep01(double s);

// 1 for x <= 1/3, 0 for x >= 2/3, monotone C^2 transition between.
double smooth_plateau_bump(double x);

struct SpikeParams {
    double ell0 = 0.1; // support radius
    double h0 = 0.0;   // plateau height, fixed by unit-mass normalization
    double plateau_fraction = 1.0 / 3.0;
    double zero_fraction = 2.0 / 3.0;
};

// Analytic spike field on the integer lattice: h0 * bump(d / ell0) where d is
// the distance to the nearest lattice point. Periodic with period 1 per axis.
struct SpikeLattice {
    SpikeParams params;
    double operator()(double x, double y) const;
};

struct SpikeBuildOptions {
    // Spikes must span >= 3 nodes across the plateau (ell0 > 6 h). Pipelines
    // that deliberately run under-resolved presets may disable the check;
    // the unit-mass normalization stays exact either way.
    bool require_resolved = true;
};

// One unit-mass spike per unit cell, plateau height chosen so the discrete
// cell integral is exactly 1. Requires integer-periodic extents, nodes
// aligned with the unit lattice, and h0 > 2 * max_height of the paired torus.
std::pair<ScalarField, SpikeParams>
build_spiked_u0(const PeriodicGrid& grid, const ProfileCurve& torus,
                const SpikeBuildOptions& opts = {});

// Discrete unit-cell mass of a unit-height spike bump on this grid's spacing.
double spike_cell_mass(const PeriodicGrid& grid, double ell0);

// Exact continuum normalization constant: h0 = 63 / (16 pi ell0^2) makes the
// cell integral of the bump equal one. Used as the quadrature oracle.
double spike_height_continuum(double ell0);

// Factorial interval layout: I_0 = [0, 1 - ell], I_m = [m! + ell,
// (m+1)! - ell]; value b on even intervals, a on odd ones, truncated at
// m_max (beyond the last interval the value continues at its level).
struct SlabLayout {
    double ell = 0.1;
    int m_max = 3;
    double a = 0.0;
    double b = 1.0;

    void validate() const; // 0 < ell < 1/4, m_max >= 2, a < b
    std::pair<double, double> interval(int m) const;
    double level(int m) const { return (m % 2) ? a : b; }
    double tail_level() const { return level(m_max); }
    // Slab families on |x1|, defined for k >= 1.
    std::pair<double, double> even_slab(int k) const; // S_{2k}
    std::pair<double, double> odd_slab(int k) const;  // S_{2k+1}
    double domain_requirement() const;                // (m_max + 1)!
};

double factorial_of(int m);

// Even, C^2, a <= phi0 <= b, exact plateau values on the intervals.
double phi0(const SlabLayout& layout, double x1);

// Upper-barrier profile: 1 + rho0 on |x1| in [(2k)! - 1/4, (2k+1)! + 1/4]
// (first plateau extended across the origin), eps on
// [(2k+1)! + 1/2, (2k+2)! - 1/2], C^2 transitions in the quarter gaps,
// truncated consistently with the layout's m_max.
struct Phi0Plus {
    double eps = 0.1;
    double rho0 = 0.1;
    int m_max = 3;
    double operator()(double x1) const;
};

Phi0Plus build_phi0_plus(double eps, double rho0, const SlabLayout& layout);

// Analytic combined graph: phi0(x1) plus unit-mass spikes at integer lattice
// points whose full support lies inside an odd slab.
struct W0Graph {
    SlabLayout layout;
    SpikeParams spike;
    bool spike_site(long long i) const; // integer x1 coordinates carrying spikes
    double operator()(double x1, double x2) const;
};

struct W0Build {
    ScalarField field;
    SpikeParams spike;
    W0Graph analytic;
    std::vector<long long> sites;         // spike x1 coordinates (positive half)
    std::vector<long long> skipped_sites; // in an odd slab but support overlaps its edge
};

// Samples w0 on the grid. Requires x2 period 1, x1 period centered on 0 and
// covering the truncated layout plus a buffer, and node alignment with the
// integer lattice.
W0Build build_w0(const PeriodicGrid& grid, const SlabLayout& layout,
                 const ProfileCurve& torus, const SpikeBuildOptions& opts = {});

} // namespace graphflow
