// Uniform periodic grids in 1 or 2 dimensions and scalar fields sampled on them.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace graphflow {

// Node (i,j) sits at origin + (i*hx, j*hy). Indexing wraps on every axis.
// For dim == 1 the second axis is a single dummy node.
class PeriodicGrid {
public:
    PeriodicGrid(int dim, std::array<double, 2> extents, std::array<int, 2> counts,
                 std::array<double, 2> origin = {0.0, 0.0});

    static PeriodicGrid line(double extent, int count, double origin = 0.0);
    static PeriodicGrid plane(std::array<double, 2> extents, std::array<int, 2> counts,
                              std::array<double, 2> origin = {0.0, 0.0});

    int dim() const { return dim_; }
    double extent(int axis) const { return extents_[axis]; }
    int count(int axis) const { return counts_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double origin(int axis) const { return origin_[axis]; }
    double min_spacing() const;
    std::size_t size() const { return static_cast<std::size_t>(counts_[0]) * counts_[1]; }

    double coord(int axis, int index) const { return origin_[axis] + spacing_[axis] * index; }
    int wrap(int axis, int i) const;
    std::size_t node(int i, int j) const {
        return static_cast<std::size_t>(i) * counts_[1] + j;
    }

    // Shortest signed displacement b - a on the periodic axis.
    double periodic_delta(int axis, double a, double b) const;
    // Periodic Euclidean distance from node (i,j) to point p.
    double periodic_distance(int i, int j, std::array<double, 2> p) const;
    // Index of the node nearest to point p.
    std::array<int, 2> nearest_node(std::array<double, 2> p) const;

    bool operator==(const PeriodicGrid& o) const = default;

private:
    int dim_;
    std::array<double, 2> extents_;
    std::array<int, 2> counts_;
    std::array<double, 2> origin_;
    std::array<double, 2> spacing_;
};

class ScalarField {
public:
    explicit ScalarField(const PeriodicGrid& grid, double fill = 0.0);
    ScalarField(const PeriodicGrid& grid, std::vector<double> values);

    const PeriodicGrid& grid() const { return grid_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double& at(int i, int j = 0) { return values_[grid_.node(i, j)]; }
    double at(int i, int j = 0) const { return values_[grid_.node(i, j)]; }
    double at_wrapped(int i, int j = 0) const {
        return values_[grid_.node(grid_.wrap(0, i), grid_.wrap(1, j))];
    }

    // Samples f at every node. f receives physical coordinates (x, y); for
    // dim 1 the second coordinate is the origin of the dummy axis.
    void fill(const std::function<double(double, double)>& f);

    double sup() const;
    double inf() const;
    double mean() const;      // compensated summation, fixed order
    bool all_finite() const;

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

} // namespace graphflow
