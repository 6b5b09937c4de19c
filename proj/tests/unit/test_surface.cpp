#include <cmath>
#include <random>

#include "doctest.h"
#include "rot4/errors.hpp"
#include "rot4/numeric.hpp"
#include "rot4/profile.hpp"
#include "rot4/surface.hpp"

using namespace rot4;

TEST_CASE("flat circle family invariants") {
    RotationSurface surf = flat_family(1.0, 1.0, 0.0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> s_pick(surf.s_range.lo + 0.01, surf.s_range.hi - 0.01);
    for (int i = 0; i < 50; ++i) {
        const double s = s_pick(rng);
        const InvariantTriple inv = invariants(surf, s);
        CHECK(std::fabs(inv.a) <= 1e-14);
        CHECK(inv.b == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(inv.c == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::fabs(gaussian_curvature(surf, s)) <= 1e-13);
        const auto gc = gauss_codazzi_residual(surf, s);
        CHECK(gc.first <= 1e-13);
        CHECK(gc.second <= 1e-13);
    }
}

TEST_CASE("flat family validates the unit-speed relation") {
    CHECK_THROWS_AS(flat_family(2.0, 1.0, 0.0), FamilyError);
    RotationSurface ok = flat_family(2.0, 0.5, 0.0);
    CHECK(invariants(ok, 1.0).b == doctest::Approx(0.5));
    CHECK(invariants(ok, 1.0).c == doctest::Approx(0.5));
}

TEST_CASE("closed frame matches the hand-computed one at the base point") {
    RotationSurface surf = flat_family(1.0, 1.0, 0.0);
    const Frame f = closed_frame(surf, 0.0, 0.0);
    // e1 = (0,1,0,0), e2 = (0,0,1,0), e3 = (-1,0,0,0)... e3 = (-y',.,x',.)
    CHECK(f[0].v[1] == doctest::Approx(1.0));
    CHECK(std::fabs(f[0].v[0]) + std::fabs(f[0].v[2]) + std::fabs(f[0].v[3]) <= 1e-15);
    CHECK(f[1].v[2] == doctest::Approx(1.0));
    CHECK(f[2].v[0] == doctest::Approx(-1.0));
    CHECK(f[3].v[3] == doctest::Approx(-1.0));
    CHECK(frame_gram_deviation(f) <= 1e-15);
}

TEST_CASE("frame is orthonormal along the surface") {
    for (auto spec : {"clifford", "logspiral(mu=1)", "line(p=1,q=0,u=0,v=1)"}) {
        ProfileCurve p = parse_profile_spec(spec);
        RotationSurface surf = make_surface(p);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> s_pick(surf.s_range.lo + 1e-3, surf.s_range.hi - 1e-3);
        std::uniform_real_distribution<double> t_pick(surf.t_range.lo + 1e-3, surf.t_range.hi - 1e-3);
        for (int i = 0; i < 40; ++i) {
            CHECK(frame_gram_deviation(closed_frame(surf, s_pick(rng), t_pick(rng))) <= 1e-12);
        }
    }
}

TEST_CASE("line profile invariants at the reference point") {
    ProfileCurve p = make_family(Family::Line, {{"p", 1.0}, {"q", 0.0}, {"u", 0.0}, {"v", 1.0}});
    RotationSurface surf = make_surface(p, Interval{0.5, 2.5}, Interval{0.0, 2.0 * kPi});
    const InvariantTriple inv = invariants(surf, 1.0);
    CHECK(inv.a == doctest::Approx(0.5));
    CHECK(inv.b == doctest::Approx(0.5));
    CHECK(inv.c == doctest::Approx(0.0));
    CHECK(gaussian_curvature(surf, 1.0) == doctest::Approx(-0.25));
    const auto gc = gauss_codazzi_residual(surf, 1.0);
    CHECK(gc.first <= 1e-14);
    CHECK(gc.second <= 1e-14);
}

TEST_CASE("logspiral invariants and closed Laplacian pattern") {
    ProfileCurve p = make_family(Family::LogSpiral, {{"mu", 1.0}});
    RotationSurface surf = make_surface(p);
    const InvariantTriple inv = invariants(surf, 0.0);
    CHECK(inv.a == doctest::Approx(1.0));
    CHECK(inv.b == doctest::Approx(1.0));
    CHECK(inv.c == doctest::Approx(1.0));

    for (double s : {0.6, 1.0, 1.7}) {
        const double a = invariants(surf, s).a;
        const FrameBivector lap = laplacian_gauss_closed(surf, s);
        CHECK(lap.c[0] == doctest::Approx(4.0 * a * a).epsilon(1e-12));
        CHECK(lap.c[1] == doctest::Approx(2.0 * a * a).epsilon(1e-12));
        CHECK(std::fabs(lap.c[2]) <= 1e-15);
        CHECK(std::fabs(lap.c[3]) <= 1e-15);
        CHECK(lap.c[4] == doctest::Approx(-2.0 * a * a).epsilon(1e-12));
        CHECK(std::fabs(lap.c[5]) <= 1e-15);
    }
}

TEST_CASE("second fundamental form entries follow the b and c pattern") {
    ProfileCurve p = make_family(Family::LogSpiral, {{"mu", 0.7}});
    RotationSurface surf = make_surface(p);
    const InvariantTriple inv = invariants(surf, 1.1);
    const SecondFundamental h = second_fundamental(surf, 1.1);
    CHECK(h.h3_11 == doctest::Approx(inv.b));
    CHECK(h.h3_12 == 0.0);
    CHECK(h.h3_22 == doctest::Approx(inv.c));
    CHECK(h.h4_11 == 0.0);
    CHECK(h.h4_12 == doctest::Approx(-inv.b));
    CHECK(h.h4_22 == 0.0);
    CHECK(gaussian_curvature(surf, 1.1) ==
          doctest::Approx(inv.b * inv.c - inv.b * inv.b).epsilon(1e-13));
}

TEST_CASE("connection forms follow the invariant table") {
    ProfileCurve p = make_family(Family::LogSpiral, {{"mu", 1.3}});
    RotationSurface surf = make_surface(p);
    const InvariantTriple inv = invariants(surf, 0.9);
    const ConnectionForms w = connection_forms(surf, 0.9);
    CHECK(w.w12.on_w1 == doctest::Approx(-inv.a));
    CHECK(w.w12.on_w2 == 0.0);
    CHECK(w.w13.on_w1 == doctest::Approx(inv.b));
    CHECK(w.w14.on_w2 == doctest::Approx(-inv.b));
    CHECK(w.w23.on_w2 == doctest::Approx(inv.c));
    CHECK(w.w24.on_w1 == doctest::Approx(-inv.b));
    CHECK(w.w34.on_w1 == doctest::Approx(-inv.a));
    CHECK(w.w34.on_w2 == 0.0);
}

TEST_CASE("frame derivative identities hold numerically") {
    RotationSurface cliff = flat_family(1.0, 1.0, 0.0);
    CHECK(frame_derivative_residual(cliff, 0.7, 1.1, 1e-4) <= 1e-7);
    ProfileCurve p = make_family(Family::LogSpiral, {{"mu", 0.7}});
    RotationSurface ls = make_surface(p);
    CHECK(frame_derivative_residual(ls, 1.0, 0.5, 1e-4) <= 1e-7);
    ProfileCurve ln = make_family(Family::Line, {{"p", 1.0}, {"q", 0.0}, {"u", 0.0}, {"v", 1.0}});
    RotationSurface lns = make_surface(ln);
    CHECK(frame_derivative_residual(lns, 1.2, 2.0, 1e-4) <= 1e-7);
}

TEST_CASE("make_surface rejects bad inputs") {
    ProfileCurve vr = make_family(Family::Vranceanu, {{"k", 0.3}});
    CHECK_THROWS_AS(make_surface(vr), FamilyError);  // not unit speed

    // profile through the axis: rho -> 0 inside the window
    ProfileCurve through = make_family(Family::Line, {{"p", 0.0}, {"q", 0.0}, {"u", 0.0}, {"v", 1.0}});
    CHECK_THROWS_AS(make_surface(through, Interval{-0.5, 0.5}, Interval{0.0, 1.0}),
                    DegenerateError);

    ProfileCurve ok = parse_profile_spec("clifford");
    CHECK_THROWS_AS(make_surface(ok, Interval{1.0, 1.0}, Interval{0.0, 1.0}), DomainError);

    ProfileCurve ls = make_family(Family::LogSpiral, {{"mu", 1.0}});
    CHECK_THROWS_AS(make_surface(ls, Interval{-5.0, 1.0}, Interval{0.0, 1.0}), DomainError);
}

TEST_CASE("embedding and analytic samples are consistent") {
    RotationSurface surf = flat_family(1.0, 1.0, 0.0);
    const double s = 0.4, t = 2.1;
    const Vec4 x = embed(surf, s, t);
    CHECK(norm(x) == doctest::Approx(1.0));  // rho = 1 for the unit circle profile
    const ImmersionSample smp = analytic_sample(surf, s, t);
    CHECK(norm(smp.position - x) <= 1e-15);
    // X_tt = -X on the circle profile
    CHECK(norm(smp.X_tt + x) <= 1e-15);

    const ImmersionMap map = rotation_map(surf);
    const ImmersionSample numeric = numeric_jets(map, s, t, 1e-4);
    CHECK(norm(numeric.X_ss - smp.X_ss) <= 1e-6);
    CHECK(norm(numeric.X_st - smp.X_st) <= 1e-6);
    CHECK(norm(numeric.X_tt - smp.X_tt) <= 1e-6);
}

TEST_CASE("profile_rotation_map enforces its domain") {
    ProfileCurve vr = make_family(Family::Vranceanu, {{"k", 0.5}});
    const ImmersionMap map = profile_rotation_map(vr, Interval{-1.0, 1.0}, Interval{0.0, 2.0});
    CHECK(map.eval(0.0, 1.0).finite());
    CHECK_THROWS_AS(map.eval(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(map.eval(0.0, 3.0), DomainError);
}
