#include "rot4/surface.hpp"

#include <algorithm>
#include <cmath>

#include "rot4/errors.hpp"

namespace rot4 {

namespace {

void check_point(const RotationSurface& surf, double s, double t) {
    if (!surf.s_range.contains(s))
        throw DomainError("s=" + std::to_string(s) + " is outside the surface s-range");
    if (!surf.t_range.contains(t))
        throw DomainError("t=" + std::to_string(t) + " is outside the surface t-range");
}

struct MeridianPoint {
    Jet3 x, y;
    double rho2;
};

MeridianPoint meridian(const RotationSurface& surf, double s) {
    MeridianPoint m;
    m.x = surf.profile.x(s);
    m.y = surf.profile.y(s);
    m.rho2 = m.x.f * m.x.f + m.y.f * m.y.f;
    if (!(m.rho2 >= surf.rho_min))
        throw DegenerateError("surface radius x^2+y^2 = " + std::to_string(m.rho2) +
                              " fell below the floor at s=" + std::to_string(s));
    return m;
}

} // namespace

RotationSurface make_surface(ProfileCurve profile, Interval s_range, Interval t_range,
                             double rho_min) {
    if (!(s_range.hi > s_range.lo) || !(t_range.hi > t_range.lo))
        throw DomainError("surface parameter ranges must be nondegenerate");
    if (!profile.domain.contains(s_range.lo, 1e-12) || !profile.domain.contains(s_range.hi, 1e-12))
        throw DomainError("surface s-range leaves the profile domain");
    if (!(rho_min > 0.0)) throw DomainError("rho_min must be positive");

    RotationSurface surf{std::move(profile), s_range, t_range, rho_min};
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        double s = s_range.lo + (s_range.hi - s_range.lo) * i / double(n);
        Jet3 x = surf.profile.x(s), y = surf.profile.y(s);
        double speed2 = x.d1 * x.d1 + y.d1 * y.d1;
        if (std::abs(speed2 - 1.0) > 1e-8)
            throw FamilyError("profile is not unit speed at s=" + std::to_string(s) +
                              " (|x'^2+y'^2-1| = " + std::to_string(std::abs(speed2 - 1.0)) +
                              "); reparametrize by arclength first");
        double rho2 = x.f * x.f + y.f * y.f;
        if (!(rho2 >= rho_min))
            throw DegenerateError("surface radius x^2+y^2 = " + std::to_string(rho2) +
                                  " fell below the floor at s=" + std::to_string(s));
    }
    return surf;
}

RotationSurface make_surface(ProfileCurve profile) {
    Interval s_range = profile.preferred_s;
    return make_surface(std::move(profile), s_range, {0.0, 2.0 * kPi, false, false});
}

RotationSurface flat_family(double lambda, double b0, double d) {
    if (std::abs(b0 * b0 * lambda * lambda - 1.0) > 1e-12)
        throw FamilyError("flat family requires b0^2 lambda^2 = 1");
    ProfileCurve profile =
        make_family(Family::Circle, {{"lambda", lambda}, {"b0", b0}, {"d", d}});
    return make_surface(std::move(profile));
}

Vec4 embed(const RotationSurface& surf, double s, double t) {
    check_point(surf, s, t);
    Jet3 x = surf.profile.x(s), y = surf.profile.y(s);
    double ct = std::cos(t), st = std::sin(t);
    return {x.f * ct, x.f * st, y.f * ct, y.f * st};
}

Frame closed_frame(const RotationSurface& surf, double s, double t) {
    check_point(surf, s, t);
    MeridianPoint m = meridian(surf, s);
    double rho = std::sqrt(m.rho2);
    double ct = std::cos(t), st = std::sin(t);
    double x = m.x.f, y = m.y.f, xp = m.x.d1, yp = m.y.d1;
    Frame f;
    f[0] = Vec4{-x * st, x * ct, -y * st, y * ct} / rho;
    f[1] = {xp * ct, xp * st, yp * ct, yp * st};
    f[2] = {-yp * ct, -yp * st, xp * ct, xp * st};
    f[3] = Vec4{-y * st, y * ct, x * st, -x * ct} / rho;
    return f;
}

InvariantTriple invariants(const RotationSurface& surf, double s) {
    MeridianPoint m = meridian(surf, s);
    const Jet3 &x = m.x, &y = m.y;
    double rho2 = m.rho2;
    double rho2p = 2.0 * (x.f * x.d1 + y.f * y.d1);

    InvariantTriple iv;
    iv.s = s;
    double num_a = x.f * x.d1 + y.f * y.d1;
    double num_ap = x.d1 * x.d1 + x.f * x.d2 + y.d1 * y.d1 + y.f * y.d2;
    iv.a = num_a / rho2;
    iv.a_prime = (num_ap * rho2 - num_a * rho2p) / (rho2 * rho2);

    double num_b = x.f * y.d1 - x.d1 * y.f;
    double num_bp = x.f * y.d2 - x.d2 * y.f; // the x'y' cross terms cancel
    iv.b = num_b / rho2;
    iv.b_prime = (num_bp * rho2 - num_b * rho2p) / (rho2 * rho2);

    iv.c = x.d1 * y.d2 - x.d2 * y.d1;
    iv.c_prime = x.d1 * y.d3 - x.d3 * y.d1; // the x''y'' cross terms cancel
    return iv;
}

SecondFundamental second_fundamental(const RotationSurface& surf, double s) {
    InvariantTriple iv = invariants(surf, s);
    SecondFundamental h;
    h.h3_11 = iv.b;
    h.h3_12 = 0.0;
    h.h3_22 = iv.c;
    h.h4_11 = 0.0;
    h.h4_12 = -iv.b;
    h.h4_22 = 0.0;
    return h;
}

ConnectionForms connection_forms(const RotationSurface& surf, double s) {
    InvariantTriple iv = invariants(surf, s);
    ConnectionForms w;
    w.w12 = {-iv.a, 0.0};
    w.w13 = {iv.b, 0.0};
    w.w14 = {0.0, -iv.b};
    w.w23 = {0.0, iv.c};
    w.w24 = {-iv.b, 0.0};
    w.w34 = {-iv.a, 0.0};
    return w;
}

double gaussian_curvature(const RotationSurface& surf, double s) {
    InvariantTriple iv = invariants(surf, s);
    return iv.b * iv.c - iv.b * iv.b;
}

std::pair<double, double> gauss_codazzi_residual(const RotationSurface& surf, double s) {
    InvariantTriple iv = invariants(surf, s);
    double gauss = iv.a_prime + iv.a * iv.a - iv.b * iv.b + iv.b * iv.c;
    double codazzi = iv.b_prime + 2.0 * iv.a * iv.b - iv.a * iv.c;
    return {std::abs(gauss), std::abs(codazzi)};
}

FrameBivector laplacian_gauss_closed(const RotationSurface& surf, double s) {
    InvariantTriple iv = invariants(surf, s);
    FrameBivector out;
    out[0] = 3.0 * iv.b * iv.b + iv.c * iv.c;
    out[1] = 2.0 * iv.a * iv.b - iv.a * iv.c - iv.c_prime;
    out[2] = 0.0;
    out[3] = 0.0;
    out[4] = -3.0 * iv.a * iv.b - iv.b_prime;
    out[5] = 2.0 * iv.b * iv.b - 2.0 * iv.b * iv.c;
    return out;
}

ImmersionMap rotation_map(const RotationSurface& surf) {
    return profile_rotation_map(surf.profile, surf.s_range, surf.t_range);
}

ImmersionMap profile_rotation_map(const ProfileCurve& profile, Interval s_range, Interval t_range) {
    ProfileCurve copy = profile;
    ImmersionMap map;
    map.value = [copy](double s, double t) -> Vec4 {
        Jet3 x = copy.x(s), y = copy.y(s);
        double ct = std::cos(t), st = std::sin(t);
        return {x.f * ct, x.f * st, y.f * ct, y.f * st};
    };
    map.jet1 = [copy](double s, double t) -> std::pair<Vec4, Vec4> {
        Jet3 x = copy.x(s), y = copy.y(s);
        double ct = std::cos(t), st = std::sin(t);
        Vec4 X_s{x.d1 * ct, x.d1 * st, y.d1 * ct, y.d1 * st};
        Vec4 X_t{-x.f * st, x.f * ct, -y.f * st, y.f * ct};
        return {X_s, X_t};
    };
    map.s_domain = s_range;
    map.t_domain = t_range;
    return map;
}

ImmersionSample analytic_sample(const RotationSurface& surf, double s, double t) {
    check_point(surf, s, t);
    Jet3 x = surf.profile.x(s), y = surf.profile.y(s);
    double ct = std::cos(t), st = std::sin(t);
    ImmersionSample smp;
    smp.s = s;
    smp.t = t;
    smp.position = {x.f * ct, x.f * st, y.f * ct, y.f * st};
    smp.X_s = {x.d1 * ct, x.d1 * st, y.d1 * ct, y.d1 * st};
    smp.X_t = {-x.f * st, x.f * ct, -y.f * st, y.f * ct};
    smp.X_ss = {x.d2 * ct, x.d2 * st, y.d2 * ct, y.d2 * st};
    smp.X_st = {-x.d1 * st, x.d1 * ct, -y.d1 * st, y.d1 * ct};
    smp.X_tt = {-x.f * ct, -x.f * st, -y.f * ct, -y.f * st};
    return smp;
}

double frame_derivative_residual(const RotationSurface& surf, double s, double t, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    InvariantTriple iv = invariants(surf, s);
    Frame f = closed_frame(surf, s, t);
    double rho = std::sqrt(meridian(surf, s).rho2);

    Frame fsp = closed_frame(surf, s + h, t), fsm = closed_frame(surf, s - h, t);
    Frame ftp = closed_frame(surf, s, t + h), ftm = closed_frame(surf, s, t - h);

    // Directional derivatives: along e1 = (1/rho) d/dt, along e2 = d/ds.
    auto d_e1 = [&](std::size_t i) { return (ftp[i] - ftm[i]) / (2.0 * h * rho); };
    auto d_e2 = [&](std::size_t i) { return (fsp[i] - fsm[i]) / (2.0 * h); };

    const double a = iv.a, b = iv.b, c = iv.c;
    Vec4 rhs_e1[4] = {
        -a * f[1] + b * f[2], // nabla_{e1} e1
        a * f[0] - b * f[3],  // nabla_{e1} e2
        -b * f[0] - a * f[3], // nabla_{e1} e3
        b * f[1] + a * f[2],  // nabla_{e1} e4
    };
    Vec4 rhs_e2[4] = {
        -b * f[3], // nabla_{e2} e1
        c * f[2],  // nabla_{e2} e2
        -c * f[1], // nabla_{e2} e3
        b * f[0],  // nabla_{e2} e4
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max(worst, norm(d_e1(i) - rhs_e1[i]));
        worst = std::max(worst, norm(d_e2(i) - rhs_e2[i]));
    }
    return worst;
}

} // namespace rot4
