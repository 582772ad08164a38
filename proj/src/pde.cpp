#include "graphflow/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphflow {

std::string flow_kind_name(FlowKind k) {
    switch (k) {
        case FlowKind::Heat: return "heat";
        case FlowKind::Mcf: return "mcf";
        case FlowKind::Csf: return "csf";
    }
    return "?";
}

FlowKind flow_kind_from_name(const std::string& name) {
    if (name == "heat") return FlowKind::Heat;
    if (name == "mcf") return FlowKind::Mcf;
    if (name == "csf") return FlowKind::Csf;
    throw std::invalid_argument("unknown flow kind '" + name + "'");
}

void FlowParams::validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("FlowParams: t_end must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("FlowParams: cfl_safety must be in (0, 1]");
    if (dt_cap && !(*dt_cap > 0.0))
        throw std::invalid_argument("FlowParams: dt_cap must be positive");
    if (!record_times.empty() && !std::is_sorted(record_times.begin(), record_times.end()))
        throw std::invalid_argument("FlowParams: record_times must be sorted");
    if (record_times.empty() && !(record_every > 0.0))
        throw std::invalid_argument("FlowParams: record_every must be positive");
}

namespace {

inline int wrap_up(int i, int n) { return i + 1 == n ? 0 : i + 1; }
inline int wrap_dn(int i, int n) { return i == 0 ? n - 1 : i - 1; }

void csf_rhs_1d(const ScalarField& u, ScalarField& out) {
    const auto& g = u.grid();
    const int nx = g.count(0);
    const double hx = g.spacing(0);
    const double inv2h = 1.0 / (2.0 * hx), invh2 = 1.0 / (hx * hx);
    const auto& v = u.values();
    auto& o = out.values();
#pragma omp parallel for schedule(static) if (nx >= 16384)
    for (int i = 0; i < nx; ++i) {
        const double e = v[wrap_up(i, nx)], w = v[wrap_dn(i, nx)], c = v[i];
        const double ux = (e - w) * inv2h;
        const double uxx = (e - 2.0 * c + w) * invh2;
        o[i] = uxx / (1.0 + ux * ux);
    }
}

void mcf_rhs_2d(const ScalarField& u, ScalarField& out) {
    const auto& g = u.grid();
    const int nx = g.count(0), ny = g.count(1);
    const double hx = g.spacing(0), hy = g.spacing(1);
    const double inv2hx = 1.0 / (2.0 * hx), inv2hy = 1.0 / (2.0 * hy);
    const double invhx2 = 1.0 / (hx * hx), invhy2 = 1.0 / (hy * hy);
    const double invhxy = 1.0 / (4.0 * hx * hy);
    const auto& v = u.values();
    auto& o = out.values();
#pragma omp parallel for schedule(static) if (nx * ny >= 16384)
    for (int i = 0; i < nx; ++i) {
        const int ip = wrap_up(i, nx), im = wrap_dn(i, nx);
        const std::size_t row = static_cast<std::size_t>(i) * ny;
        const std::size_t rowp = static_cast<std::size_t>(ip) * ny;
        const std::size_t rowm = static_cast<std::size_t>(im) * ny;
        for (int j = 0; j < ny; ++j) {
            const int jp = wrap_up(j, ny), jm = wrap_dn(j, ny);
            const double c = v[row + j];
            const double e = v[rowp + j], w = v[rowm + j];
            const double n = v[row + jp], s = v[row + jm];
            const double ne = v[rowp + jp], nw = v[rowm + jp];
            const double se = v[rowp + jm], sw = v[rowm + jm];
            const double ux = (e - w) * inv2hx, uy = (n - s) * inv2hy;
            const double uxx = (e - 2.0 * c + w) * invhx2;
            const double uyy = (n - 2.0 * c + s) * invhy2;
            const double uxy = (ne - nw - se + sw) * invhxy;
            const double W = 1.0 + ux * ux + uy * uy;
            o[row + j] = uxx + uyy -
                         (ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy) / W;
        }
    }
}

void heat_rhs_impl(const ScalarField& u, ScalarField& out) {
    const auto& g = u.grid();
    const int nx = g.count(0), ny = g.count(1);
    const double invhx2 = 1.0 / (g.spacing(0) * g.spacing(0));
    const auto& v = u.values();
    auto& o = out.values();
    if (g.dim() == 1) {
#pragma omp parallel for schedule(static) if (nx >= 16384)
        for (int i = 0; i < nx; ++i)
            o[i] = (v[wrap_up(i, nx)] - 2.0 * v[i] + v[wrap_dn(i, nx)]) * invhx2;
        return;
    }
    const double invhy2 = 1.0 / (g.spacing(1) * g.spacing(1));
#pragma omp parallel for schedule(static) if (nx * ny >= 16384)
    for (int i = 0; i < nx; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * ny;
        const std::size_t rowp = static_cast<std::size_t>(wrap_up(i, nx)) * ny;
        const std::size_t rowm = static_cast<std::size_t>(wrap_dn(i, nx)) * ny;
        for (int j = 0; j < ny; ++j) {
            const int jp = wrap_up(j, ny), jm = wrap_dn(j, ny);
            o[row + j] = (v[rowp + j] - 2.0 * v[row + j] + v[rowm + j]) * invhx2 +
                         (v[row + jp] - 2.0 * v[row + j] + v[row + jm]) * invhy2;
        }
    }
}

} // namespace

std::vector<ScalarField> gradient(const ScalarField& u) {
    const auto& g = u.grid();
    const int nx = g.count(0), ny = g.count(1);
    const auto& v = u.values();
    std::vector<ScalarField> out;
    out.emplace_back(g);
    if (g.dim() == 2) out.emplace_back(g);
    const double inv2hx = 1.0 / (2.0 * g.spacing(0));
    auto& dx = out[0].values();
    for (int i = 0; i < nx; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * ny;
        const std::size_t rowp = static_cast<std::size_t>(wrap_up(i, nx)) * ny;
        const std::size_t rowm = static_cast<std::size_t>(wrap_dn(i, nx)) * ny;
        for (int j = 0; j < ny; ++j) dx[row + j] = (v[rowp + j] - v[rowm + j]) * inv2hx;
    }
    if (g.dim() == 2) {
        const double inv2hy = 1.0 / (2.0 * g.spacing(1));
        auto& dy = out[1].values();
        for (int i = 0; i < nx; ++i) {
            const std::size_t row = static_cast<std::size_t>(i) * ny;
            for (int j = 0; j < ny; ++j)
                dy[row + j] =
                    (v[row + wrap_up(j, ny)] - v[row + wrap_dn(j, ny)]) * inv2hy;
        }
    }
    return out;
}

void heat_rhs(const ScalarField& u, ScalarField& out) { heat_rhs_impl(u, out); }

void csf_rhs(const ScalarField& u, ScalarField& out) {
    if (u.grid().dim() != 1)
        throw std::invalid_argument("csf_rhs: field must be one-dimensional");
    csf_rhs_1d(u, out);
}

void mcf_rhs(const ScalarField& u, ScalarField& out) {
    // In dimension 1 the flow is curve shortening; same code path, so the two
    // right-hand sides agree bitwise.
    if (u.grid().dim() == 1)
        csf_rhs_1d(u, out);
    else
        mcf_rhs_2d(u, out);
}

ScalarField heat_rhs(const ScalarField& u) {
    ScalarField out(u.grid());
    heat_rhs(u, out);
    return out;
}
ScalarField mcf_rhs(const ScalarField& u) {
    ScalarField out(u.grid());
    mcf_rhs(u, out);
    return out;
}
ScalarField csf_rhs(const ScalarField& u) {
    ScalarField out(u.grid());
    csf_rhs(u, out);
    return out;
}

double stable_dt(const PeriodicGrid& grid, const FlowParams& params) {
    const double h = grid.min_spacing();
    double dt = params.cfl_safety * h * h / (2.0 * grid.dim());
    if (params.dt_cap) dt = std::min(dt, *params.dt_cap);
    return dt;
}

RunResult run(const ScalarField& u0, const FlowParams& params,
              const std::vector<std::array<double, 2>>& probes,
              const std::vector<Recorder>& recorders) {
    params.validate();
    const auto& grid = u0.grid();
    const FlowKind kind = params.kind;
    if (kind == FlowKind::Csf && grid.dim() != 1)
        throw std::invalid_argument("run: csf requires a one-dimensional grid");

    const double dt = stable_dt(grid, params);
    const std::size_t n = grid.size();

    std::vector<std::size_t> probe_nodes;
    for (const auto& p : probes) {
        const auto ij = grid.nearest_node(p);
        probe_nodes.push_back(grid.node(ij[0], ij[1]));
    }

    RunResult res{u0, {}, true, 0.0, dt, ""};
    res.series.columns = {"t", "sup", "inf", "mean"};
    for (std::size_t k = 0; k < probes.size(); ++k)
        res.series.columns.push_back("probe" + std::to_string(k));
    for (const auto& rec : recorders) res.series.columns.push_back(rec.name);

    ScalarField work(grid);
    auto record = [&](const ScalarField& f, double t) {
        std::vector<double> row{t, f.sup(), f.inf(), f.mean()};
        for (std::size_t idx : probe_nodes) row.push_back(f.values()[idx]);
        for (const auto& rec : recorders) row.push_back(rec.fn(f, t));
        res.series.rows.push_back(std::move(row));
    };

    // Recording targets; observers sample at the first step at or after each.
    std::vector<double> targets = params.record_times;
    if (targets.empty())
        for (double t = 0.0; t <= params.t_end + 1e-15; t += params.record_every)
            targets.push_back(t);
    std::size_t next_target = 0;
    auto maybe_record = [&](const ScalarField& f, double t) {
        bool due = false;
        while (next_target < targets.size() && targets[next_target] <= t + 1e-15) {
            ++next_target;
            due = true;
        }
        if (due) record(f, t);
    };

    maybe_record(res.field, 0.0);

    ScalarField next_field(grid);
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(params.t_end / dt - 1e-12));
    double t = 0.0;
    for (std::size_t step = 0; step < n_steps; ++step) {
        double dt_step = dt;
        double t_next = dt * static_cast<double>(step + 1);
        if (step + 1 == n_steps || t_next > params.t_end) {
            t_next = params.t_end;
            dt_step = params.t_end - t;
        }
        switch (kind) {
            case FlowKind::Heat: heat_rhs(res.field, work); break;
            case FlowKind::Mcf: mcf_rhs(res.field, work); break;
            case FlowKind::Csf: csf_rhs(res.field, work); break;
        }
        const auto& v = res.field.values();
        const auto& r = work.values();
        auto& w = next_field.values();
        bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok) if (n >= 16384)
        for (long long idx = 0; idx < static_cast<long long>(n); ++idx) {
            const double nv = v[idx] + dt_step * r[idx];
            ok = ok && std::isfinite(nv);
            w[idx] = nv;
        }
        if (!ok) {
            res.completed = false;
            res.t_reached = t;
            res.message = "non-finite value detected; aborted after t = " + std::to_string(t);
            return res;
        }
        std::swap(res.field.values(), next_field.values());
        t = t_next;
        maybe_record(res.field, t);
    }
    res.t_reached = t;
    if (res.series.rows.empty() || res.series.rows.back()[0] < t - 1e-15)
        record(res.field, t);
    return res;
}

} // namespace graphflow
