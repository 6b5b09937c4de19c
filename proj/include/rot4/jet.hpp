#pragma once

// Truncated Taylor-jet arithmetic: a value together with its first three
// derivatives with respect to the curve parameter. Order 3 is the smallest
// jet that feeds every downstream formula (c'(s) consumes third derivatives).

#include <cmath>
#include <cstdlib>

#include "rot4/errors.hpp"

namespace rot4 {

struct Jet3 {
    double f = 0.0;  // value
    double d1 = 0.0; // first derivative
    double d2 = 0.0; // second derivative
    double d3 = 0.0; // third derivative

    static Jet3 constant(double v) { return {v, 0.0, 0.0, 0.0}; }
    static Jet3 variable(double s) { return {s, 1.0, 0.0, 0.0}; }

    bool finite() const {
        return std::isfinite(f) && std::isfinite(d1) && std::isfinite(d2) && std::isfinite(d3);
    }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet3 operator-(const Jet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator+(const Jet3& a, double k) { return {a.f + k, a.d1, a.d2, a.d3}; }
inline Jet3 operator+(double k, const Jet3& a) { return a + k; }
inline Jet3 operator-(const Jet3& a, double k) { return {a.f - k, a.d1, a.d2, a.d3}; }
inline Jet3 operator-(double k, const Jet3& a) { return {k - a.f, -a.d1, -a.d2, -a.d3}; }

// Leibniz to order 3.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}
inline Jet3 operator*(const Jet3& a, double k) { return {a.f * k, a.d1 * k, a.d2 * k, a.d3 * k}; }
inline Jet3 operator*(double k, const Jet3& a) { return a * k; }

// Quotient q = a/b from a = q*b and Leibniz, peeled order by order.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
    Jet3 q;
    q.f = a.f / b.f;
    q.d1 = (a.d1 - q.f * b.d1) / b.f;
    q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.f * b.d2) / b.f;
    q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.f * b.d3) / b.f;
    return q;
}
inline Jet3 operator/(const Jet3& a, double k) { return a * (1.0 / k); }
inline Jet3 operator/(double k, const Jet3& a) { return Jet3::constant(k) / a; }

/// Chain rule (Faa di Bruno to order 3): outer holds the derivatives of F
/// with respect to its own argument, evaluated at inner.f.
inline Jet3 compose(const Jet3& outer, const Jet3& inner) {
    Jet3 r;
    r.f = outer.f;
    r.d1 = outer.d1 * inner.d1;
    r.d2 = outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2;
    r.d3 = outer.d3 * inner.d1 * inner.d1 * inner.d1 +
           3.0 * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3;
    return r;
}

inline Jet3 sin(const Jet3& a) {
    double s = std::sin(a.f), c = std::cos(a.f);
    return compose({s, c, -s, -c}, a);
}

inline Jet3 cos(const Jet3& a) {
    double s = std::sin(a.f), c = std::cos(a.f);
    return compose({c, -s, -c, s}, a);
}

inline Jet3 exp(const Jet3& a) {
    double e = std::exp(a.f);
    return compose({e, e, e, e}, a);
}

/// Natural log; the caller is responsible for a.f > 0.
inline Jet3 log(const Jet3& a) {
    double u = a.f;
    return compose({std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u)}, a);
}

/// Square root; the caller is responsible for a.f > 0 (derivatives blow up at 0).
inline Jet3 sqrt(const Jet3& a) {
    double r = std::sqrt(a.f);
    double inv = 1.0 / a.f;
    return compose({r, 0.5 * r * inv, -0.25 * r * inv * inv, 0.375 * r * inv * inv * inv}, a);
}

/// Integer power by repeated multiplication; valid for any base, n >= 0.
inline Jet3 powi(const Jet3& a, long n) {
    if (n < 0) return Jet3::constant(1.0) / powi(a, -n);
    Jet3 r = Jet3::constant(1.0);
    Jet3 base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

} // namespace rot4
