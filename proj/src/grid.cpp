#include "graphflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphflow {

PeriodicGrid::PeriodicGrid(int dim, std::array<double, 2> extents, std::array<int, 2> counts,
                           std::array<double, 2> origin)
    : dim_(dim), extents_(extents), counts_(counts), origin_(origin) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("PeriodicGrid: dim must be 1 or 2");
    if (dim == 1) {
        counts_[1] = 1;
        extents_[1] = 0.0;
    }
    for (int a = 0; a < dim_; ++a) {
        if (counts_[a] < 8)
            throw std::invalid_argument("PeriodicGrid: counts must be >= 8 on every axis");
        if (!(extents_[a] > 0.0))
            throw std::invalid_argument("PeriodicGrid: extents must be positive");
    }
    spacing_[0] = extents_[0] / counts_[0];
    spacing_[1] = dim_ == 2 ? extents_[1] / counts_[1] : 0.0;
}

PeriodicGrid PeriodicGrid::line(double extent, int count, double origin) {
    return PeriodicGrid(1, {extent, 0.0}, {count, 1}, {origin, 0.0});
}

PeriodicGrid PeriodicGrid::plane(std::array<double, 2> extents, std::array<int, 2> counts,
                                 std::array<double, 2> origin) {
    return PeriodicGrid(2, extents, counts, origin);
}

double PeriodicGrid::min_spacing() const {
    return dim_ == 2 ? std::min(spacing_[0], spacing_[1]) : spacing_[0];
}

int PeriodicGrid::wrap(int axis, int i) const {
    const int n = counts_[axis];
    int m = i % n;
    return m < 0 ? m + n : m;
}

double PeriodicGrid::periodic_delta(int axis, double a, double b) const {
    if (axis >= dim_) return b - a;
    const double L = extents_[axis];
    double d = std::remainder(b - a, L);
    return d;
}

double PeriodicGrid::periodic_distance(int i, int j, std::array<double, 2> p) const {
    const double dx = periodic_delta(0, coord(0, i), p[0]);
    if (dim_ == 1) return std::abs(dx);
    const double dy = periodic_delta(1, coord(1, j), p[1]);
    return std::hypot(dx, dy);
}

std::array<int, 2> PeriodicGrid::nearest_node(std::array<double, 2> p) const {
    std::array<int, 2> out{0, 0};
    for (int a = 0; a < dim_; ++a) {
        const double rel = (p[a] - origin_[a]) / spacing_[a];
        out[a] = wrap(a, static_cast<int>(std::lround(rel)));
    }
    return out;
}

ScalarField::ScalarField(const PeriodicGrid& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

void ScalarField::fill(const std::function<double(double, double)>& f) {
    const int nx = grid_.count(0), ny = grid_.count(1);
    for (int i = 0; i < nx; ++i) {
        const double x = grid_.coord(0, i);
        for (int j = 0; j < ny; ++j)
            values_[grid_.node(i, j)] = f(x, grid_.dim() == 2 ? grid_.coord(1, j) : grid_.origin(1));
    }
}

double ScalarField::sup() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values_) m = std::max(m, v);
    return m;
}

double ScalarField::inf() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values_) m = std::min(m, v);
    return m;
}

double ScalarField::mean() const {
    // Kahan summation keeps long-run conservation checks meaningful.
    double sum = 0.0, c = 0.0;
    for (double v : values_) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(values_.size());
}

bool ScalarField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace graphflow
