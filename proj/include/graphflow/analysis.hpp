// Diagnostics over fields and recorded series: ball averages, flatness,
// curvature scale, oscillation detection, and tail-limit estimation.
#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "graphflow/grid.hpp"
#include "graphflow/series.hpp"

namespace graphflow {

// Discrete mean of f over lattice nodes (spacing h) inside the ball
// B_r(center). The window half-widths bound the region where the sampler is
// defined; a ball reaching past them is an error.
double ball_average(const std::function<double(double, double)>& f,
                    std::array<double, 2> center, double r, double h,
                    std::array<double, 2> window_half = {
                        std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()});

// Same quadrature nodes, but the integral: sum * h^2.
double ball_integral(const std::function<double(double, double)>& f,
                     std::array<double, 2> center, double r, double h,
                     std::array<double, 2> window_half = {
                         std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()});

struct Flatness {
    double osc = 0.0;      // sup - inf
    double grad_max = 0.0; // max |Du|
};

Flatness flatness(const ScalarField& u);

// Max over nodes of the second-fundamental-form norm of the graph of u,
// from the exact formula ||A||^2 = tr((g^{-1} H)^2) / (1 + |Du|^2).
double curvature_monitor(const ScalarField& u);

struct Extremum {
    double t = 0.0;
    double value = 0.0;
    bool is_max = false;
};

struct OscillationReport {
    std::vector<Extremum> extrema; // alternating by construction
    bool alternating() const;
    double min_of_minima() const; // +inf when no minima
    double max_of_maxima() const; // -inf when no maxima
    // First minimum <= vmin that is followed by a maximum >= vmax.
    bool dip_then_rise(double vmin, double vmax) const;
};

// Dead-band (prominence) extremum detection, no smoothing. Fewer than 3
// records give an empty report. The trailing running extremum is committed
// as an endpoint extremum.
OscillationReport detect_oscillation(const std::vector<double>& ts,
                                     const std::vector<double>& vs, double dead_band);

struct LimitEstimate {
    double c0 = 0.0;
    double band = 0.0;
    bool stabilized = false;
};

// Midpoint and width of [min inf, max sup] over the trailing tail_fraction
// of the series; stabilized when the band over the second half of the tail
// is no wider than over the first half.
LimitEstimate estimate_limit_constant(const TimeSeries& series, double tail_fraction);

} // namespace graphflow
