#pragma once

// Meridian profile curves s -> (x(s), y(s)) for rotational surfaces in E^4.
// A profile is a pair of scalar functions with third-order jets, an open or
// closed evaluation domain, and metadata: whether the curve is unit speed
// (x'^2 + y'^2 = 1) and which s-window is sensible for sampling.

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "rot4/expr.hpp"
#include "rot4/jet.hpp"

namespace rot4 {

struct Interval {
    double lo;
    double hi;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double s, double margin = 0.0) const {
        double a = lo + (lo_open ? margin : 0.0);
        double b = hi - (hi_open ? margin : 0.0);
        return s >= a && s <= b;
    }
};

struct ProfileCurve {
    std::function<Jet3(double)> x;
    std::function<Jet3(double)> y;
    Interval domain{-1e300, 1e300, false, false};
    // Sub-range of the domain suitable for default grids; always finite.
    Interval preferred_s{0.0, 1.0, false, false};
    bool unit_speed = false;
    std::string label;
    std::map<std::string, double> params;
};

enum class Family { Circle, LogSpiral, Line, Vranceanu };

// Families:
//   circle(lambda, b0 = 1/lambda, d = 0)
//     x = lambda cos(b0 s + d), y = lambda sin(b0 s + d); unit speed exactly
//     when lambda^2 b0^2 = 1, in which case a = 0 and b = c = b0.
//   logspiral(mu, s0 = 1)
//     lambda = 1/sqrt(1+mu^2); x = lambda (s+s0) cos(mu ln(s+s0)),
//     y = lambda (s+s0) sin(mu ln(s+s0)); unit speed; a = 1/(s+s0), b = c = mu a.
//   line(p, q, u, v)
//     x = p + s u, y = q + s v with u^2 + v^2 = 1.
//   vranceanu(k)
//     x = exp(k s) cos s, y = exp(k s) sin s; speed sqrt(1+k^2) exp(k s),
//     so never unit speed.
ProfileCurve make_family(Family fam, const std::map<std::string, double>& params);

// Builds an arclength reparametrization of `raw` measured from s_range.lo.
// The result is unit speed with domain [0, L]. Throws ReparamError when the
// speed degenerates on the sampled window. The one-argument form uses
// raw.preferred_s as the window.
ProfileCurve arclength_reparametrize(const ProfileCurve& raw, Interval s_range);
ProfileCurve arclength_reparametrize(const ProfileCurve& raw);

// Parses a profile specification string:
//   "family:circle(lambda=1,b0=1)"           named family with parameters
//   "expr:x=cos(s);y=sin(s);s=0:6.28"        explicit component expressions
//   "clifford"                               alias for the flat circle profile
// Expression profiles probe 200 interior points to decide unit_speed.
ProfileCurve parse_profile_spec(const std::string& spec);

} // namespace rot4
