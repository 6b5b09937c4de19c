#pragma once

// Family-independent numerical differential geometry for immersions
// X(s,t) -> E^4: finite-difference jets, metric, orthonormal frames,
// second fundamental form, Gaussian curvature, Gauss map, and the
// Laplace-Beltrami operator applied componentwise to the Gauss map.
// Everything here works from an evaluable map alone; closed-form
// rotation-surface geometry lives elsewhere and is compared against
// this module in tests.

#include <functional>
#include <utility>

#include "rot4/exterior.hpp"
#include "rot4/profile.hpp"

namespace rot4 {

/// An immersion of a parameter rectangle into E^4. `value` is required;
/// `jet1` optionally supplies analytic first partials (X_s, X_t), which
/// the Laplacian oracle prefers because nested differencing of the value
/// map would amplify rounding. Without jet1, first partials fall back to
/// central differences at `fd_step`.
struct ImmersionMap {
    std::function<Vec4(double, double)> value;
    std::function<std::pair<Vec4, Vec4>(double, double)> jet1;
    Interval s_domain{-1e300, 1e300, false, false};
    Interval t_domain{-1e300, 1e300, false, false};
    double fd_step = 1e-5;

    Vec4 eval(double s, double t) const;

    /// X_s, X_t: analytic when jet1 is present, otherwise 2nd-order
    /// central differences of `value`.
    void first_partials(double s, double t, Vec4& X_s, Vec4& X_t) const;
};

/// Value and coordinate partials of an immersion at one parameter point.
struct ImmersionSample {
    double s = 0.0, t = 0.0;
    Vec4 position;
    Vec4 X_s, X_t;
    Vec4 X_ss, X_st, X_tt;
};

/// First fundamental form. E = <X_t, X_t>, F = <X_t, X_s>, G = <X_s, X_s>:
/// the first slot is the rotation direction t, matching the dual-form order
/// omega_1 = rho dt, omega_2 = ds, so a rotation surface has E = x^2 + y^2,
/// F = 0, G = 1.
struct MetricComponents {
    double E = 0.0, F = 0.0, G = 0.0;
    double det = 0.0;
};

/// Second fundamental form coefficients against an orthonormal frame
/// (e1, e2 tangent; e3, e4 normal): h^r_ik = <dd X(e_i, e_k), e_r>.
/// Symmetric in (i,k) by construction.
struct SecondFundamental {
    double h3_11 = 0.0, h3_12 = 0.0, h3_22 = 0.0;
    double h4_11 = 0.0, h4_12 = 0.0, h4_22 = 0.0;
};

/// All partials by 2nd-order central differences of the value map.
/// Throws DomainError when the stencil leaves the declared domain.
ImmersionSample numeric_jets(const ImmersionMap& X, double s, double t, double h);

/// Throws DegenerateError when det <= 1e-12.
MetricComponents metric_components(const ImmersionSample& sample);

/// Orthonormal frame with e1 along X_t, e2 the unit residual of X_s, and
/// the normal pair completed deterministically from the standard basis.
/// Optional hints pin the normal orientation: each hint is projected onto
/// the normal space and used when its residual is nondegenerate, so passing
/// a closed-form normal pattern reproduces that convention exactly.
Frame gram_schmidt_frame(const ImmersionSample& sample, const Vec4* normal_hint3 = nullptr,
                         const Vec4* normal_hint4 = nullptr);

/// h^r_ik from coordinate second partials decomposed over the tangent
/// basis and projected onto the frame normals.
SecondFundamental second_fundamental_numeric(const ImmersionSample& sample, const Frame& frame);

/// Gauss equation: K = det h^3 + det h^4 for an orthonormal tangent pair.
double gaussian_curvature_numeric(const ImmersionSample& sample, const Frame& frame);

/// e1 ^ e2: unit simple bivector.
Bivector4 gauss_map(const ImmersionSample& sample, const Frame& frame);

/// wedge(X_t, X_s) normalized; equals gauss_map of the frame built by
/// gram_schmidt_frame, without needing the normal completion.
Bivector4 gauss_map_raw(const Vec4& X_s, const Vec4& X_t);

/// Componentwise Laplace-Beltrami of the Gauss map in the fixed basis,
/// with the geometers' sign: Delta f = -(1/W) d_alpha(W g^{alphabeta} d_beta f),
/// W = sqrt(det g). Second-order stencils throughout; the Gauss map at each
/// stencil node is built from first partials (analytic when available).
Bivector4 laplacian_numeric(const ImmersionMap& X, double s, double t, double h);

} // namespace rot4
