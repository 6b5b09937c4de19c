#pragma once

// Commutative bicomplex algebra on R^4 with basis {1, i, j, ij}, its 4x4
// matrix representation, the hyperquadric x1*x4 = x2*x3, and numerical
// group-axiom checks for parametrized surface maps X(s, t).

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rot4/profile.hpp"

namespace rot4 {

struct Bicomplex {
    double x1 = 0.0;  // coefficient of 1
    double x2 = 0.0;  // coefficient of i
    double x3 = 0.0;  // coefficient of j
    double x4 = 0.0;  // coefficient of ij

    bool finite() const;
};

Bicomplex bc_identity();
Bicomplex bc_add(const Bicomplex& x, const Bicomplex& y);
Bicomplex bc_sub(const Bicomplex& x, const Bicomplex& y);
Bicomplex bc_scale(double k, const Bicomplex& x);

// Product in the {1, i, j, ij} basis; i^2 = j^2 = -1 and ij = ji, so the
// algebra is commutative and associative but has zero divisors (1 + ij).
Bicomplex bc_mul(const Bicomplex& x, const Bicomplex& y);

// Euclidean norm of the coefficient vector.
double bc_norm(const Bicomplex& x);

struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
};

Mat4 mat_identity();
Mat4 mat_mul(const Mat4& a, const Mat4& b);

// Regular representation g: multiplication by x as a matrix acting on
// coefficient columns. g is an algebra isomorphism onto the matrices of the
// pattern
//   ( x1 -x2 -x3  x4 )
//   ( x2  x1 -x4 -x3 )
//   ( x3 -x4  x1 -x2 )
//   ( x4  x3  x2  x1 )
Mat4 to_matrix(const Bicomplex& x);

// Inverse of to_matrix. The matrix must carry the pattern above within
// 1e-12 relative to its largest entry; throws DomainError otherwise.
Bicomplex from_matrix(const Mat4& g);

// The three conjugations. T1 negates (x2, x4): conjugate each complex
// coefficient of 1 and j. T2 negates (x3, x4): negate the j part. T3 is the
// composition and negates (x2, x3).
enum class Conjugation { T1, T2, T3 };

Bicomplex conjugate(const Bicomplex& x, Conjugation which);

// Membership in P = { x != 0 : x1*x4 = x2*x3 }, tested scale-relative so
// that exact trigonometric points pass at any magnitude.
bool in_hyperquadric(const Bicomplex& x);

// Multiplicative inverse computed as from_matrix(to_matrix(x)^-1). Zero
// divisors have singular g(x); determinant magnitude below 1e-12 * scale^4
// throws ZeroDivisorError.
Bicomplex bc_inverse(const Bicomplex& x);

// Canonical literal form "a+bi+cj+dij" with %.17g coefficients. Zero terms
// are omitted; the zero element prints as "0".
std::string format_bicomplex(const Bicomplex& x);

// Parse a literal of the same shape: signed terms, each a number, a unit
// (i, j, ij), or a number immediately followed by a unit. Whitespace between
// terms is permitted. Throws ParseError with an offset on malformed input.
Bicomplex parse_bicomplex(const std::string& text);

// Surface point (x(s) cos t, x(s) sin t, y(s) cos t, y(s) sin t) as a
// bicomplex element; the components satisfy the hyperquadric relation.
Bicomplex embed_bicomplex(const ProfileCurve& profile, double s, double t);

using SurfaceGroupMap = std::function<Bicomplex(double, double)>;

// embed_bicomplex as a reusable closure over a copy of the profile.
SurfaceGroupMap surface_group_map(const ProfileCurve& profile);

struct GroupCheckReport {
    // Raw residuals: max Euclidean norm of the axiom defect over the grid.
    double closure_residual = 0.0;   // max |X(s1,t1) x X(s2,t2) - X(s1+s2,t1+t2)|
    double inverse_residual = 0.0;   // max |X(s,t) x X(-s,-t) - 1|
    double identity_residual = 0.0;  // |X(0,0) - 1|
    double scale = 0.0;              // max component magnitude seen

    // Pass thresholds are 1e-10 * max(1, scale).
    bool closure_pass = false;
    bool inverse_pass = false;
    bool identity_pass = false;
    bool pass = false;  // all three axioms and no evaluation errors

    std::size_t pairs = 0;  // closure pairs actually evaluated
    std::vector<std::string> errors;  // evaluation failures, one line each
};

// Sample X on the grid s_samples x t_samples and test the group axioms
// pairwise. X must be evaluable at sums and negations of the samples;
// evaluation failures are recorded in the report and fail the overall
// verdict rather than throwing.
GroupCheckReport group_axiom_check(const SurfaceGroupMap& map,
                                   const std::vector<double>& s_samples,
                                   const std::vector<double>& t_samples);

// Profile in polar form x = u(s) cos(theta(s)), y = u(s) sin(theta(s)).
struct PolarProfile {
    std::function<double(double)> u;
    std::function<double(double)> theta;
    std::string label;
};

// Polar form extracted numerically from a profile curve. theta comes from
// atan2, so it is only defined modulo 2*pi; the verdict below compares
// angles modulo 2*pi and is insensitive to the branch.
PolarProfile polar_form(const ProfileCurve& profile);

struct SubgroupVerdict {
    bool u_multiplicative = false;  // |u(s1+s2) - u(s1)u(s2)| small
    bool theta_linear = false;      // theta additive modulo 2*pi
    bool pass = false;
    double u_residual = 0.0;
    double theta_residual = 0.0;
    std::string rule;  // which structural condition decided the verdict
};

// Structural test: the surface over (u cos theta, u sin theta) is a group
// under the bicomplex product exactly when u is multiplicative on sums and
// theta is additive. Sampled pairwise over s_samples; u and theta must be
// evaluable at all pairwise sums.
SubgroupVerdict lie_subgroup_verdict(const PolarProfile& profile,
                                     const std::vector<double>& s_samples);

}  // namespace rot4
