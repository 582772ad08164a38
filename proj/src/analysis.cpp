#include "graphflow/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "graphflow/pde.hpp"

namespace graphflow {

namespace {

double ball_sum(const std::function<double(double, double)>& f,
                std::array<double, 2> center, double r, double h,
                std::array<double, 2> window_half, long long& count) {
    if (!(r > 0.0) || !(h > 0.0))
        throw std::invalid_argument("ball_average: radius and spacing must be positive");
    if (r > window_half[0] || r > window_half[1])
        throw std::invalid_argument("ball_average: ball exceeds the sampled window");
    const long long m = static_cast<long long>(std::floor(r / h));
    double sum = 0.0, c = 0.0;
    count = 0;
    for (long long i = -m; i <= m; ++i) {
        for (long long j = -m; j <= m; ++j) {
            const double dx = i * h, dy = j * h;
            if (dx * dx + dy * dy > r * r) continue;
            ++count;
            const double y = f(center[0] + dx, center[1] + dy) - c;
            const double t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

} // namespace

double ball_average(const std::function<double(double, double)>& f,
                    std::array<double, 2> center, double r, double h,
                    std::array<double, 2> window_half) {
    long long count = 0;
    const double sum = ball_sum(f, center, r, h, window_half, count);
    return sum / static_cast<double>(count);
}

double ball_integral(const std::function<double(double, double)>& f,
                     std::array<double, 2> center, double r, double h,
                     std::array<double, 2> window_half) {
    long long count = 0;
    return ball_sum(f, center, r, h, window_half, count) * h * h;
}

Flatness flatness(const ScalarField& u) {
    Flatness out;
    out.osc = u.sup() - u.inf();
    const auto grads = gradient(u);
    if (u.grid().dim() == 1) {
        for (double v : grads[0].values()) out.grad_max = std::max(out.grad_max, std::abs(v));
    } else {
        const auto& gx = grads[0].values();
        const auto& gy = grads[1].values();
        for (std::size_t k = 0; k < gx.size(); ++k)
            out.grad_max = std::max(out.grad_max, std::hypot(gx[k], gy[k]));
    }
    return out;
}

double curvature_monitor(const ScalarField& u) {
    const auto& g = u.grid();
    const int nx = g.count(0), ny = g.count(1);
    const double hx = g.spacing(0);
    auto wrap = [](int i, int n) { return i < 0 ? i + n : (i >= n ? i - n : i); };
    double worst = 0.0;
    if (g.dim() == 1) {
        const double inv2h = 1.0 / (2.0 * hx), invh2 = 1.0 / (hx * hx);
        for (int i = 0; i < nx; ++i) {
            const double e = u.at(wrap(i + 1, nx)), w = u.at(wrap(i - 1, nx));
            const double ux = (e - w) * inv2h;
            const double uxx = (e - 2.0 * u.at(i) + w) * invh2;
            const double W = 1.0 + ux * ux;
            worst = std::max(worst, std::abs(uxx) / (W * std::sqrt(W)));
        }
        return worst;
    }
    const double hy = g.spacing(1);
    const double inv2hx = 1.0 / (2.0 * hx), inv2hy = 1.0 / (2.0 * hy);
    const double invhx2 = 1.0 / (hx * hx), invhy2 = 1.0 / (hy * hy);
    const double invhxy = 1.0 / (4.0 * hx * hy);
    for (int i = 0; i < nx; ++i) {
        const int ip = wrap(i + 1, nx), im = wrap(i - 1, nx);
        for (int j = 0; j < ny; ++j) {
            const int jp = wrap(j + 1, ny), jm = wrap(j - 1, ny);
            const double c = u.at(i, j);
            const double e = u.at(ip, j), w = u.at(im, j);
            const double n = u.at(i, jp), s = u.at(i, jm);
            const double ux = (e - w) * inv2hx, uy = (n - s) * inv2hy;
            const double uxx = (e - 2.0 * c + w) * invhx2;
            const double uyy = (n - 2.0 * c + s) * invhy2;
            const double uxy = (u.at(ip, jp) - u.at(im, jp) - u.at(ip, jm) + u.at(im, jm)) * invhxy;
            const double W = 1.0 + ux * ux + uy * uy;
            // Ginv = I - Du Du^T / W, M = Ginv * Hess
            const double g11 = 1.0 - ux * ux / W, g12 = -ux * uy / W, g22 = 1.0 - uy * uy / W;
            const double m11 = g11 * uxx + g12 * uxy;
            const double m12 = g11 * uxy + g12 * uyy;
            const double m21 = g12 * uxx + g22 * uxy;
            const double m22 = g12 * uxy + g22 * uyy;
            const double tr = m11 * m11 + 2.0 * m12 * m21 + m22 * m22;
            worst = std::max(worst, std::sqrt(std::max(0.0, tr / W)));
        }
    }
    return worst;
}

bool OscillationReport::alternating() const {
    for (std::size_t k = 1; k < extrema.size(); ++k)
        if (extrema[k].is_max == extrema[k - 1].is_max) return false;
    return true;
}

double OscillationReport::min_of_minima() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : extrema)
        if (!e.is_max) m = std::min(m, e.value);
    return m;
}

double OscillationReport::max_of_maxima() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& e : extrema)
        if (e.is_max) m = std::max(m, e.value);
    return m;
}

bool OscillationReport::dip_then_rise(double vmin, double vmax) const {
    for (std::size_t i = 0; i < extrema.size(); ++i) {
        if (extrema[i].is_max || extrema[i].value > vmin) continue;
        for (std::size_t j = i + 1; j < extrema.size(); ++j)
            if (extrema[j].is_max && extrema[j].value >= vmax) return true;
    }
    return false;
}

OscillationReport detect_oscillation(const std::vector<double>& ts,
                                     const std::vector<double>& vs, double dead_band) {
    if (ts.size() != vs.size())
        throw std::invalid_argument("detect_oscillation: mismatched series lengths");
    OscillationReport rep;
    const std::size_t n = vs.size();
    if (n < 3) return rep;

    std::size_t run_min = 0, run_max = 0;
    int dir = 0;
    auto commit = [&](std::size_t k, bool is_max) {
        rep.extrema.push_back({ts[k], vs[k], is_max});
    };
    for (std::size_t k = 1; k < n; ++k) {
        const double v = vs[k];
        if (v < vs[run_min]) run_min = k;
        if (v > vs[run_max]) run_max = k;
        if (dir == 0) {
            if (v - vs[run_min] >= dead_band) {
                commit(run_min, false);
                dir = 1;
                run_max = k;
            } else if (vs[run_max] - v >= dead_band) {
                commit(run_max, true);
                dir = -1;
                run_min = k;
            }
        } else if (dir > 0) {
            if (vs[run_max] - v >= dead_band) {
                commit(run_max, true);
                dir = -1;
                run_min = k;
            }
        } else {
            if (v - vs[run_min] >= dead_band) {
                commit(run_min, false);
                dir = 1;
                run_max = k;
            }
        }
    }
    // Endpoint extremum of the unfinished swing.
    if (dir > 0)
        commit(run_max, true);
    else if (dir < 0)
        commit(run_min, false);
    return rep;
}

LimitEstimate estimate_limit_constant(const TimeSeries& series, double tail_fraction) {
    if (series.rows.empty())
        throw std::invalid_argument("estimate_limit_constant: empty series");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::invalid_argument("estimate_limit_constant: tail_fraction in (0, 1]");
    const auto ts = series.times();
    const auto sup = series.column("sup");
    const auto inf = series.column("inf");
    const double t0 = ts.front(), t1 = ts.back();
    const double t_lo = t1 - tail_fraction * (t1 - t0);
    const double t_mid = 0.5 * (t_lo + t1);

    double lo1 = std::numeric_limits<double>::infinity(), hi1 = -lo1;
    double lo2 = lo1, hi2 = -lo1;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] < t_lo) continue;
        if (ts[k] <= t_mid) {
            lo1 = std::min(lo1, inf[k]);
            hi1 = std::max(hi1, sup[k]);
        }
        lo2 = std::min(lo2, inf[k]);
        hi2 = std::max(hi2, sup[k]);
    }
    LimitEstimate est;
    est.c0 = 0.5 * (lo2 + hi2);
    est.band = hi2 - lo2;
    double lo3 = std::numeric_limits<double>::infinity(), hi3 = -lo3;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] <= t_mid) continue;
        lo3 = std::min(lo3, inf[k]);
        hi3 = std::max(hi3, sup[k]);
    }
    const double band1 = hi1 - lo1, band3 = hi3 - lo3;
    est.stabilized = std::isfinite(band1) && std::isfinite(band3) &&
                     band3 <= band1 * 1.0000001 + 1e-15;
    return est;
}

} // namespace graphflow
