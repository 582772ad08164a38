// Rotationally symmetric self-shrinkers: profile-curve ODE, fixed-step
// integration with return-event detection, and shooting for the closed
// (Angenent) torus profile.
#pragma once

#include <array>
#include <optional>
#include <vector>

namespace graphflow {

// Point on the profile curve in the (r, z) half-plane; theta is the tangent
// angle, so r' = cos(theta), z' = sin(theta) in arclength.
struct ProfileState {
    double r = 1.0;
    double z = 0.0;
    double theta = 0.0;
};

// Arclength derivative (dr, dz, dtheta) of the self-shrinker profile ODE for
// a hypersurface of revolution in R^{n+1}. Throws if state.r <= 0.
std::array<double, 3> shrinker_rhs(const ProfileState& state, int n);

enum class IntegrationOutcome { Returned, NoReturn, AxisCollision };

struct ProfileSample {
    double s = 0.0;
    ProfileState state;
    // True once the trajectory has passed through the rotation axis an odd
    // number of times; such samples live on the reflected (r -> -r) branch.
    bool reflected = false;
};

struct IntegrateOptions {
    double max_arclength = 20.0;
    double r_floor = 1e-3;      // at or below: axis collision, unless the
                                // crossing looks like a smooth cap
    double cap_sin_tol = 0.05;  // |sin theta| threshold for cap crossings
};

struct IntegrationResult {
    std::vector<ProfileSample> samples;
    IntegrationOutcome outcome = IntegrationOutcome::NoReturn;
    ProfileState end_state;     // interpolated at the z = 0 return when Returned
    double end_s = 0.0;
    int axis_crossings = 0;
};

// Classical fixed-step RK4 from `start` until the first return to z = 0
// (event located by cubic Hermite interpolation), max_arclength, or the
// axis. Transversal crossings of the axis with |sin theta| small are smooth
// caps; they are stepped over exactly via the reflection symmetry of the ODE
// and continued on the reflected branch.
IntegrationResult integrate_profile(const ProfileState& start, int n, double step,
                                    const IntegrateOptions& opts = {});

// Closed profile curve of a rotationally symmetric self-shrinking torus,
// sampled along arclength: upper arc from (inner_radius, 0) to
// (outer_radius, 0) followed by its mirror image across the r-axis.
struct ProfileCurve {
    std::vector<ProfileSample> samples;
    std::size_t upper_count = 0; // samples [0, upper_count) form the upper arc
    int n = 2;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    double max_height = 0.0;
    double extinction_time = 1.0;
    double step = 0.0;
    double miss = 0.0; // residual of the perpendicular-return condition
};

struct ShootOptions {
    double tol = 1e-10;        // on the miss angle theta_end + pi/2
    double step = 1e-4;        // arclength step of the final profile
    double coarse_step = 2e-4; // used while bisecting
    std::optional<std::array<double, 2>> bracket;
    double scan_lo = 0.3;
    double scan_step = 0.02;
    double max_arclength = 20.0;
    double r_floor = 1e-3;
};

// Bisection on the starting radius of perpendicular shots from the r-axis.
// Throws on bracket failure, degenerate (axis-crossing) branches, or
// non-convergence.
ProfileCurve shoot_torus(int n, const ShootOptions& opts = {});

// Homothety by lambda = min(target_outer / outer_radius,
// target_height_cap / max_height); lengths scale by lambda, the extinction
// time by lambda^2.
ProfileCurve scale_torus(const ProfileCurve& curve, double target_outer,
                         double target_height_cap);

// Cached monotone cubic interpolant (Fritsch-Carlson slopes) of the upper
// arc, for repeated cross-section evaluation.
class ProfileSection {
public:
    explicit ProfileSection(const ProfileCurve& curve);
    ProfileSection() = default;
    double upper(double rho) const; // z+ at base radius rho, clamped endpoints
    double inner() const { return inner_; }
    double outer() const { return outer_; }
private:
    std::vector<double> r_, z_, m_;
    double inner_ = 0.0, outer_ = 0.0;
};

// Heights of the closed profile above base radius rho, by monotone cubic
// interpolation along the upper arc; z_minus = -z_plus by reflection
// symmetry. Requires inner_radius <= rho <= outer_radius.
std::pair<double, double> torus_cross_section(const ProfileCurve& curve, double rho);

// Diagnostics used by tests and the acceptance suite.
double shrinker_residual_max(const ProfileCurve& curve);
double signed_curvature_max(const ProfileCurve& curve); // max of theta' (convex profiles stay < 0)
double reflection_asymmetry(const ProfileCurve& curve);

} // namespace graphflow
