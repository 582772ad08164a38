// Explicit time stepping of graphical mean curvature flow, its 1-D
// curve-shortening reduction, and the heat equation on periodic grids.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graphflow/grid.hpp"
#include "graphflow/series.hpp"

namespace graphflow {

enum class FlowKind { Heat, Mcf, Csf };

std::string flow_kind_name(FlowKind k);
FlowKind flow_kind_from_name(const std::string& name);

struct FlowParams {
    FlowKind kind = FlowKind::Heat;
    double t_end = 1.0;
    double cfl_safety = 0.9;             // in (0, 1]
    double record_every = 0.1;
    std::optional<double> dt_cap;
    // When set, recording happens at the first step at or after each listed
    // time instead of the uniform record_every cadence. Must be sorted.
    std::vector<double> record_times;

    void validate() const; // throws on bad values
};

// Second-order central first derivatives with periodic wrap, one field per axis.
std::vector<ScalarField> gradient(const ScalarField& u);

// Pointwise right-hand sides. `out` must live on the same grid as `u`.
void heat_rhs(const ScalarField& u, ScalarField& out);
void mcf_rhs(const ScalarField& u, ScalarField& out);
void csf_rhs(const ScalarField& u, ScalarField& out); // dim 1 only

ScalarField heat_rhs(const ScalarField& u);
ScalarField mcf_rhs(const ScalarField& u);
ScalarField csf_rhs(const ScalarField& u);

// Explicit-Euler parabolic step size: cfl * h_min^2 / (2 * dim * Lambda) with
// Lambda = 1 (the normal-direction coefficient of MCF/CSF never exceeds 1).
double stable_dt(const PeriodicGrid& grid, const FlowParams& params);

// Extra named observer columns, sampled at record times.
struct Recorder {
    std::string name;
    std::function<double(const ScalarField&, double)> fn;
};

struct RunResult {
    ScalarField field;
    TimeSeries series;
    bool completed = true;
    double t_reached = 0.0;
    double dt = 0.0;
    std::string message;
};

// Evolves u0 to params.t_end. Probes are physical points sampled at the
// nearest node. Aborts (completed = false) if any value stops being finite;
// the field and t_reached then hold the last accepted state.
RunResult run(const ScalarField& u0, const FlowParams& params,
              const std::vector<std::array<double, 2>>& probes = {},
              const std::vector<Recorder>& recorders = {});

} // namespace graphflow
