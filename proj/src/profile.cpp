#include "graphflow/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::array<double, 3> shrinker_rhs(const ProfileState& st, int n) {
    if (!(st.r > 0.0))
        throw std::domain_error("shrinker_rhs: r <= 0 (axis singularity)");
    const double sin_t = std::sin(st.theta), cos_t = std::cos(st.theta);
    const double dtheta =
        0.5 * (st.r * sin_t - st.z * cos_t) - (n - 1) * sin_t / st.r;
    return {cos_t, sin_t, dtheta};
}

namespace {

// Signed-r evaluation: the ODE extends smoothly to the reflected branch.
inline std::array<double, 3> rhs_raw(double r, double z, double theta, int n) {
    const double sin_t = std::sin(theta), cos_t = std::cos(theta);
    return {cos_t, sin_t, 0.5 * (r * sin_t - z * cos_t) - (n - 1) * sin_t / r};
}

inline ProfileState rk4_step(const ProfileState& st, int n, double h) {
    const auto k1 = rhs_raw(st.r, st.z, st.theta, n);
    const auto k2 = rhs_raw(st.r + 0.5 * h * k1[0], st.z + 0.5 * h * k1[1],
                            st.theta + 0.5 * h * k1[2], n);
    const auto k3 = rhs_raw(st.r + 0.5 * h * k2[0], st.z + 0.5 * h * k2[1],
                            st.theta + 0.5 * h * k2[2], n);
    const auto k4 =
        rhs_raw(st.r + h * k3[0], st.z + h * k3[1], st.theta + h * k3[2], n);
    return {st.r + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            st.z + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            st.theta + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])};
}

inline double hermite(double p0, double m0, double p1, double m1, double h, double s) {
    const double u = s / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * p0 + (u3 - 2.0 * u2 + u) * h * m0 +
           (-2.0 * u3 + 3.0 * u2) * p1 + (u3 - u2) * h * m1;
}

} // namespace

IntegrationResult integrate_profile(const ProfileState& start, int n, double step,
                                    const IntegrateOptions& opts) {
    if (!(start.r > 0.0))
        throw std::domain_error("integrate_profile: start.r must be positive");
    if (!(step > 0.0))
        throw std::invalid_argument("integrate_profile: step must be positive");

    IntegrationResult res;
    ProfileState st = start;
    double s = 0.0;
    bool reflected = false;
    const double arm_height = 5.0 * step;
    bool armed = std::abs(start.z) > arm_height;
    const double cap_guard = std::max(opts.r_floor, 20.0 * step);

    res.samples.push_back({s, st, reflected});

    while (s < opts.max_arclength) {
        // Axis handling: collisions end the trajectory, smooth caps are
        // stepped over by the exact reflection symmetry of the ODE.
        if (st.r <= cap_guard && std::cos(st.theta) < 0.0) {
            if (std::abs(std::sin(st.theta)) <= opts.cap_sin_tol) {
                const double sig = st.r / (-std::cos(st.theta));
                st = {st.r, st.z, st.theta - kPi};
                s += 2.0 * sig;
                reflected = !reflected;
                ++res.axis_crossings;
                res.samples.push_back({s, st, reflected});
                continue;
            }
            res.outcome = IntegrationOutcome::AxisCollision;
            res.end_state = st;
            res.end_s = s;
            return res;
        }
        if (st.r <= opts.r_floor) {
            res.outcome = IntegrationOutcome::AxisCollision;
            res.end_state = st;
            res.end_s = s;
            return res;
        }

        const double h = std::min(step, opts.max_arclength - s);
        const ProfileState prev = st;
        st = rk4_step(st, n, h);
        s += h;

        if (!armed && std::abs(st.z) > arm_height) armed = true;

        if (armed && ((prev.z > 0.0 && st.z <= 0.0) || (prev.z < 0.0 && st.z >= 0.0))) {
            // Locate the z = 0 crossing inside [0, h] with the Hermite cubic
            // built from endpoint values and exact endpoint derivatives.
            const auto d0 = rhs_raw(prev.r, prev.z, prev.theta, n);
            const auto d1 = rhs_raw(st.r, st.z, st.theta, n);
            double lo = 0.0, hi = h;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double zm = hermite(prev.z, d0[1], st.z, d1[1], h, mid);
                if ((zm <= 0.0) == (st.z <= 0.0))
                    hi = mid;
                else
                    lo = mid;
            }
            const double sc = 0.5 * (lo + hi);
            res.end_state = {hermite(prev.r, d0[0], st.r, d1[0], h, sc),
                             hermite(prev.z, d0[1], st.z, d1[1], h, sc),
                             hermite(prev.theta, d0[2], st.theta, d1[2], h, sc)};
            res.end_s = s - h + sc;
            res.outcome = IntegrationOutcome::Returned;
            res.samples.push_back({res.end_s, res.end_state, reflected});
            return res;
        }
        res.samples.push_back({s, st, reflected});
    }
    res.outcome = IntegrationOutcome::NoReturn;
    res.end_state = st;
    res.end_s = s;
    return res;
}

namespace {

struct MissEval {
    bool valid = false;
    double miss = 0.0;
    IntegrationOutcome outcome = IntegrationOutcome::NoReturn;
    int crossings = 0;
};

MissEval eval_miss(double r_start, int n, double step, const ShootOptions& opts) {
    IntegrateOptions io;
    io.max_arclength = opts.max_arclength;
    io.r_floor = opts.r_floor;
    const auto res = integrate_profile({r_start, 0.0, kPi / 2.0}, n, step, io);
    MissEval out;
    out.outcome = res.outcome;
    out.crossings = res.axis_crossings;
    if (res.outcome == IntegrationOutcome::Returned && res.axis_crossings == 0) {
        out.valid = true;
        out.miss = res.end_state.theta + kPi / 2.0;
    }
    return out;
}

std::string outcome_label(const MissEval& m) {
    if (m.crossings > 0) return "crosses the rotation axis (sphere branch)";
    if (m.outcome == IntegrationOutcome::AxisCollision) return "axis collision";
    return "no return to z = 0";
}

} // namespace

ProfileCurve shoot_torus(int n, const ShootOptions& opts) {
    if (n < 2) throw std::invalid_argument("shoot_torus: n must be >= 2");
    const double cylinder_r = std::sqrt(2.0 * (n - 1));

    double lo, hi;
    MissEval m_lo, m_hi;
    if (opts.bracket) {
        lo = (*opts.bracket)[0];
        hi = (*opts.bracket)[1];
        m_lo = eval_miss(lo, n, opts.coarse_step, opts);
        m_hi = eval_miss(hi, n, opts.coarse_step, opts);
        if (!m_lo.valid || !m_hi.valid)
            throw std::runtime_error("shoot_torus: bracket failure: shot at r = " +
                                     std::to_string(!m_lo.valid ? lo : hi) + " is degenerate (" +
                                     outcome_label(!m_lo.valid ? m_lo : m_hi) + ")");
        if (m_lo.miss * m_hi.miss > 0.0)
            throw std::runtime_error("shoot_torus: bracket failure: miss does not change sign");
    } else {
        // Coarse scan below the cylinder radius for a sign change of the miss.
        bool found = false;
        double prev_r = 0.0;
        MissEval prev{};
        lo = hi = 0.0;
        for (double r = opts.scan_lo; r < cylinder_r - 1e-6; r += opts.scan_step) {
            const MissEval m = eval_miss(r, n, opts.coarse_step, opts);
            if (m.valid && prev.valid && prev.miss * m.miss <= 0.0) {
                lo = prev_r;
                hi = r;
                m_lo = prev;
                m_hi = m;
                found = true;
                break;
            }
            prev = m;
            prev_r = r;
        }
        if (!found)
            throw std::runtime_error(
                "shoot_torus: bracket failure: no sign change found in scan");
    }

    double miss_mid = 0.5 * (m_lo.miss + m_hi.miss);
    double r_mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        r_mid = 0.5 * (lo + hi);
        const double step_now = (hi - lo) < 1e-8 ? opts.step : opts.coarse_step;
        const MissEval m = eval_miss(r_mid, n, step_now, opts);
        if (!m.valid)
            throw std::runtime_error("shoot_torus: shot at r = " + std::to_string(r_mid) +
                                     " failed during bisection (" + outcome_label(m) + ")");
        miss_mid = m.miss;
        if (std::abs(miss_mid) < opts.tol && step_now == opts.step) break;
        if ((miss_mid > 0.0) == (m_lo.miss > 0.0)) {
            lo = r_mid;
            m_lo = m;
        } else {
            hi = r_mid;
            m_hi = m;
        }
        if (hi - lo < 1e-15 * std::max(1.0, std::abs(lo)))
            throw std::runtime_error("shoot_torus: bisection stalled with miss " +
                                     std::to_string(miss_mid));
    }
    if (std::abs(miss_mid) >= opts.tol)
        throw std::runtime_error("shoot_torus: did not reach the requested miss tolerance");

    IntegrateOptions io;
    io.max_arclength = opts.max_arclength;
    io.r_floor = opts.r_floor;
    const auto upper = integrate_profile({r_mid, 0.0, kPi / 2.0}, n, opts.step, io);
    if (upper.outcome != IntegrationOutcome::Returned || upper.axis_crossings != 0)
        throw std::runtime_error("shoot_torus: converged shot no longer returns");

    ProfileCurve curve;
    curve.n = n;
    curve.step = opts.step;
    curve.miss = upper.end_state.theta + kPi / 2.0;
    curve.samples = upper.samples;
    curve.upper_count = curve.samples.size();
    curve.inner_radius = r_mid;
    curve.outer_radius = upper.end_state.r;
    curve.extinction_time = 1.0;
    if (!(curve.inner_radius > 0.0) || !(curve.inner_radius < curve.outer_radius))
        throw std::runtime_error("shoot_torus: degenerate profile (inner radius not in (0, outer))");

    // Maximum height, refined parabolically through the discrete maximum.
    double zmax = 0.0;
    std::size_t kmax = 0;
    for (std::size_t k = 0; k < curve.samples.size(); ++k) {
        if (curve.samples[k].state.z > zmax) {
            zmax = curve.samples[k].state.z;
            kmax = k;
        }
    }
    if (kmax > 0 && kmax + 1 < curve.samples.size()) {
        const double z0 = curve.samples[kmax - 1].state.z;
        const double z1 = curve.samples[kmax].state.z;
        const double z2 = curve.samples[kmax + 1].state.z;
        const double denom = z0 - 2.0 * z1 + z2;
        if (denom < 0.0) zmax = z1 - 0.125 * (z2 - z0) * (z2 - z0) / denom;
    }
    curve.max_height = zmax;

    // Close the curve with the mirror image across the r-axis; the tangent
    // angle continues decreasing through -pi/2 to a total winding of -2 pi.
    const double L1 = upper.end_s;
    for (std::size_t k = curve.upper_count - 1; k-- > 1;) {
        const auto& p = curve.samples[k];
        curve.samples.push_back(
            {2.0 * L1 - p.s, {p.state.r, -p.state.z, -kPi - p.state.theta}, false});
    }
    return curve;
}

ProfileCurve scale_torus(const ProfileCurve& curve, double target_outer,
                         double target_height_cap) {
    if (!(target_outer > 0.0) || !(target_height_cap > 0.0))
        throw std::invalid_argument("scale_torus: targets must be positive");
    const double lam = std::min(target_outer / curve.outer_radius,
                                target_height_cap / curve.max_height);
    ProfileCurve out = curve;
    for (auto& p : out.samples) {
        p.s *= lam;
        p.state.r *= lam;
        p.state.z *= lam;
    }
    out.inner_radius *= lam;
    out.outer_radius *= lam;
    out.max_height *= lam;
    out.extinction_time *= lam * lam;
    out.step *= lam;
    return out;
}

ProfileSection::ProfileSection(const ProfileCurve& c) {
    inner_ = c.inner_radius;
    outer_ = c.outer_radius;
    r_.reserve(c.upper_count);
    z_.reserve(c.upper_count);
    for (std::size_t k = 0; k < c.upper_count; ++k) {
        // r must increase strictly for the interpolant; drop stagnant samples
        // (they only occur within round-off of the perpendicular endpoints).
        const double rk = c.samples[k].state.r;
        if (!r_.empty() && rk <= r_.back()) continue;
        r_.push_back(rk);
        z_.push_back(c.samples[k].state.z);
    }
    const std::size_t n = r_.size();
    m_.assign(n, 0.0);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (z_[i + 1] - z_[i]) / (r_[i + 1] - r_[i]);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            m_[i] = 0.0;
        else {
            m_[i] = 0.5 * (d[i - 1] + d[i]);
            const double cap = 3.0 * std::min(std::abs(d[i - 1]), std::abs(d[i]));
            if (std::abs(m_[i]) > cap) m_[i] = std::copysign(cap, m_[i]);
        }
    }
}

double ProfileSection::upper(double rho) const {
    const double tol = 1e-12 * std::max(1.0, outer_);
    if (rho < inner_ - tol || rho > outer_ + tol)
        throw std::domain_error("ProfileSection: rho outside [inner, outer] radius");
    rho = std::clamp(rho, r_.front(), r_.back());
    const auto it = std::upper_bound(r_.begin(), r_.end(), rho);
    std::size_t i = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
    if (i + 1 >= r_.size()) i = r_.size() - 2;
    const double h = r_[i + 1] - r_[i];
    return std::max(0.0, hermite(z_[i], m_[i], z_[i + 1], m_[i + 1], h, rho - r_[i]));
}

std::pair<double, double> torus_cross_section(const ProfileCurve& curve, double rho) {
    const double zp = ProfileSection(curve).upper(rho);
    return {-zp, zp};
}

double shrinker_residual_max(const ProfileCurve& curve) {
    double worst = 0.0;
    const auto& smp = curve.samples;
    for (std::size_t k = 1; k + 1 < smp.size(); ++k) {
        const double hm = smp[k].s - smp[k - 1].s;
        const double hp = smp[k + 1].s - smp[k].s;
        // The closure seam carries a partial step and an O(miss) kink that a
        // divided difference would amplify; closure quality is certified by
        // the miss value, the ODE residual by the regularly spaced samples.
        if (hm < 0.9 * curve.step || hp < 0.9 * curve.step) continue;
        double dm = smp[k].state.theta - smp[k - 1].state.theta;
        double dp = smp[k + 1].state.theta - smp[k].state.theta;
        // Non-uniform three-point first derivative.
        const double dtheta =
            (hm * hm * dp + hp * hp * dm) / (hm * hp * (hm + hp));
        const auto f = shrinker_rhs(smp[k].state, curve.n);
        worst = std::max(worst, std::abs(dtheta - f[2]));
    }
    return worst;
}

double signed_curvature_max(const ProfileCurve& curve) {
    double m = -1e300;
    for (const auto& p : curve.samples) m = std::max(m, shrinker_rhs(p.state, curve.n)[2]);
    return m;
}

double reflection_asymmetry(const ProfileCurve& curve) {
    // z(s) = -z(L - s), r(s) = r(L - s) for the closed curve of length L.
    const double L = 2.0 * curve.samples[curve.upper_count - 1].s;
    double worst = 0.0;
    for (std::size_t k = curve.upper_count; k < curve.samples.size(); ++k) {
        const auto& p = curve.samples[k];
        const std::size_t j = 2 * curve.upper_count - 2 - k;
        const auto& twin = curve.samples[j];
        worst = std::max({worst, std::abs(p.state.z + twin.state.z),
                          std::abs(p.state.r - twin.state.r),
                          std::abs((p.s + twin.s) - L)});
    }
    return worst;
}

} // namespace graphflow
