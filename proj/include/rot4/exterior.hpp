#pragma once

// Fixed-basis linear algebra of E^4 and its bivector space.
//
// Bivectors are stored in the lexicographic basis
//   (E12, E13, E14, E23, E24, E34),  E_kl = eps_k ^ eps_l,
// and every module and file format in this project uses that order.

#include <array>
#include <cmath>
#include <cstddef>

#include "rot4/errors.hpp"

namespace rot4 {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec4 {
    std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};

    Vec4() = default;
    Vec4(double a, double b, double c, double d) : v{a, b, c, d} {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec4 operator+(const Vec4& o) const {
        return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2], v[3] + o.v[3]};
    }
    Vec4 operator-(const Vec4& o) const {
        return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2], v[3] - o.v[3]};
    }
    Vec4 operator*(double k) const { return {v[0] * k, v[1] * k, v[2] * k, v[3] * k}; }
    Vec4 operator/(double k) const { return {v[0] / k, v[1] / k, v[2] / k, v[3] / k}; }
    Vec4 operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }

    bool finite() const {
        return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]) &&
               std::isfinite(v[3]);
    }
};

inline Vec4 operator*(double k, const Vec4& u) { return u * k; }

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

/// Element of the 6-dimensional bivector space in the fixed basis order
/// (E12, E13, E14, E23, E24, E34). Carries no decomposability flag;
/// callers assert the Pluecker residual where simplicity is required.
struct Bivector4 {
    std::array<double, 6> c{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

    Bivector4() = default;
    Bivector4(double p12, double p13, double p14, double p23, double p24, double p34)
        : c{p12, p13, p14, p23, p24, p34} {}

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Bivector4 operator+(const Bivector4& o) const {
        Bivector4 r;
        for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Bivector4 operator-(const Bivector4& o) const {
        Bivector4 r;
        for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Bivector4 operator*(double k) const {
        Bivector4 r;
        for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] * k;
        return r;
    }
    Bivector4 operator/(double k) const { return *this * (1.0 / k); }
    Bivector4 operator-() const { return *this * -1.0; }

    bool finite() const {
        for (double x : c)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

inline Bivector4 operator*(double k, const Bivector4& p) { return p * k; }

/// Coefficients attached to a moving orthonormal frame, in the order
/// (e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4). Only meaningful together
/// with the frame they were produced for.
struct FrameBivector {
    std::array<double, 6> c{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }
};

using Frame = std::array<Vec4, 4>;

/// u ^ v in the fixed basis. Bilinear, antisymmetric, simple by construction.
inline Bivector4 wedge(const Vec4& u, const Vec4& v) {
    return {u[0] * v[1] - u[1] * v[0], u[0] * v[2] - u[2] * v[0], u[0] * v[3] - u[3] * v[0],
            u[1] * v[2] - u[2] * v[1], u[1] * v[3] - u[3] * v[1], u[2] * v[3] - u[3] * v[2]};
}

/// Induced inner product on bivectors; the fixed basis is orthonormal for it,
/// so this is the plain 6-component dot product. For simple bivectors it
/// equals the 2x2 Gram determinant <u^v, w^z> = <u,w><v,z> - <u,z><v,w>.
inline double biv_inner(const Bivector4& p, const Bivector4& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i) s += p[i] * q[i];
    return s;
}

inline double biv_norm(const Bivector4& p) { return std::sqrt(biv_inner(p, p)); }

/// p12 p34 - p13 p24 + p14 p23; zero exactly when p is simple.
inline double pluecker_residual(const Bivector4& p) {
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
}

/// Maximum deviation of the frame's Gram matrix from the identity.
inline double frame_gram_deviation(const Frame& frame) {
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
            double g = dot(frame[i], frame[j]) - (i == j ? 1.0 : 0.0);
            dev = std::max(dev, std::abs(g));
        }
    return dev;
}

/// Expands frame coefficients into the fixed basis: sum fb_ij * (e_i ^ e_j).
/// The frame must be orthonormal within `tol`; the conversion then preserves
/// the bivector inner product.
inline Bivector4 frame_biv_to_fixed(const FrameBivector& fb, const Frame& frame,
                                    double tol = 1e-10) {
    double dev = frame_gram_deviation(frame);
    if (dev > tol)
        throw FrameError("frame is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
    static constexpr std::array<std::array<std::size_t, 2>, 6> kPairs{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    Bivector4 out;
    for (std::size_t k = 0; k < 6; ++k) {
        if (fb.c[k] == 0.0) continue;
        out = out + fb.c[k] * wedge(frame[kPairs[k][0]], frame[kPairs[k][1]]);
    }
    return out;
}

} // namespace rot4
