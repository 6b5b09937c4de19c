#pragma once

// Closed-form geometry of the rotational surface
//   X(s,t) = (x(s) cos t, x(s) sin t, y(s) cos t, y(s) sin t)
// over a unit-speed meridian (x, y): moving frame, the invariants a, b, c,
// second fundamental form, connection forms, Gaussian curvature K = bc - b^2,
// the Gauss and Codazzi identities, and the closed-form Laplacian of the
// Gauss map. Every formula here is specific to this family; the generic
// numerical machinery lives in numeric.hpp and serves as its oracle.

#include <utility>

#include "rot4/numeric.hpp"

namespace rot4 {

struct RotationSurface {
    ProfileCurve profile; // must be unit speed
    Interval s_range{0.0, 1.0, false, false};
    Interval t_range{0.0, 2.0 * kPi, false, false};
    double rho_min = 1e-6; // floor on x^2 + y^2
};

/// Validates the profile (unit speed within 1e-8 and radius above rho_min,
/// both probed at 200 samples) and range containment in the profile domain.
/// Non-unit-speed profiles are rejected; reparametrize them first.
RotationSurface make_surface(ProfileCurve profile, Interval s_range, Interval t_range,
                             double rho_min = 1e-6);

/// Convenience: ranges default to the profile's preferred window and a full
/// rotation in t.
RotationSurface make_surface(ProfileCurve profile);

/// The distinguished flat surfaces: circle profile with b0^2 lambda^2 = 1
/// (required within 1e-12). K vanishes identically and the Gauss map
/// satisfies Delta G = 4 b0^2 (e1 ^ e2).
RotationSurface flat_family(double lambda, double b0, double d);

/// a, b, c and their s-derivatives at one meridian point.
struct InvariantTriple {
    double s = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double a_prime = 0.0, b_prime = 0.0, c_prime = 0.0;
};

/// Connection form coefficients against the dual basis (omega_1, omega_2).
struct ConnectionForms {
    struct Cov {
        double on_w1 = 0.0;
        double on_w2 = 0.0;
    };
    Cov w12, w13, w14, w23, w24, w34;
};

Vec4 embed(const RotationSurface& surf, double s, double t);

/// The moving frame: e1 = (1/rho) dX/dt, e2 = dX/ds tangent; e3, e4 normal,
/// rho = sqrt(x^2 + y^2).
Frame closed_frame(const RotationSurface& surf, double s, double t);

InvariantTriple invariants(const RotationSurface& surf, double s);

/// h3 = ((b,0),(0,c)), h4 = ((0,-b),(-b,0)).
SecondFundamental second_fundamental(const RotationSurface& surf, double s);

/// omega_12 = -a w1, omega_13 = b w1, omega_14 = -b w2,
/// omega_23 = c w2, omega_24 = -b w1, omega_34 = -a w1.
ConnectionForms connection_forms(const RotationSurface& surf, double s);

/// K = bc - b^2.
double gaussian_curvature(const RotationSurface& surf, double s);

/// (|a' + a^2 - b^2 + bc|, |b' + 2ab - ac|); both vanish identically on a
/// genuine unit-speed profile.
std::pair<double, double> gauss_codazzi_residual(const RotationSurface& surf, double s);

/// Closed-form Laplacian of the Gauss map in the frame bivector basis
/// (e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4):
///   (3b^2 + c^2, 2ab - ac - c', 0, 0, -3ab - b', 2b^2 - 2bc).
/// The two zero slots are reported explicitly.
FrameBivector laplacian_gauss_closed(const RotationSurface& surf, double s);

/// The surface as a generic immersion, with analytic first partials from
/// the profile jets (so numerical consumers avoid nested differencing).
ImmersionMap rotation_map(const RotationSurface& surf);

/// Same rotation construction over a raw profile, without the unit-speed
/// gate of make_surface. For numeric-only analysis of arbitrary
/// parametrizations.
ImmersionMap profile_rotation_map(const ProfileCurve& profile, Interval s_range, Interval t_range);

/// Exact coordinate partials from the profile jets; the closed-form
/// counterpart of numeric_jets.
ImmersionSample analytic_sample(const RotationSurface& surf, double s, double t);

/// Max residual over the eight frame derivative identities
///   nabla_{e1}e1 = -a e2 + b e3,      nabla_{e2}e1 = -b e4,
///   nabla_{e1}e2 =  a e1 - b e4,      nabla_{e2}e2 =  c e3,
///   nabla_{e1}e3 = -b e1 - a e4,      nabla_{e2}e3 = -c e2,
///   nabla_{e1}e4 =  b e2 + a e3,      nabla_{e2}e4 =  b e1,
/// where the left sides are central differences of the frame fields at
/// step h (directional derivative along e1 = (1/rho) d/dt, along e2 = d/ds).
double frame_derivative_residual(const RotationSurface& surf, double s, double t, double h);

} // namespace rot4
