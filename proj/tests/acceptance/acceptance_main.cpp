// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, next to the check it gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "expr_fuzz.hpp"
#include "rot4/bicomplex.hpp"
#include "rot4/errors.hpp"
#include "rot4/expr.hpp"
#include "rot4/numeric.hpp"
#include "rot4/pointwise.hpp"
#include "rot4/profile.hpp"
#include "rot4/surface.hpp"

using namespace rot4;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. the unit flat torus classifies as first kind with f = 4, C = 0
Outcome criterion_flat_torus_constants() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    RotationSurface surf = flat_family(1.0, 1.0, 0.0);
    const FlatClassification cls =
        classify_flat_surface(surf, 32, 32, 1e-3, Thresholds{}, LaplacianSource::Numeric);
    if (cls.fit.kind != PointwiseKind::First)
        out.fail(std::string("kind = ") + to_label(cls.fit.kind) + ", expected first");
    double worst_f = 0.0;
    for (double f : cls.fit.f_samples) worst_f = std::max(worst_f, std::fabs(f - 4.0));
    if (worst_f > 1e-4) out.fail("max |f - 4| = " + fmt(worst_f) + " > 1e-4");
    const double norm_c = biv_norm(cls.fit.C);
    if (norm_c > 1e-5) out.fail("||C|| = " + fmt(norm_c) + " > 1e-5");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 5.0) out.fail("runtime " + fmt(seconds) + "s >= 5s");
    out.note("32x32 grid, max |f - 4| = " + fmt(worst_f) + ", ||C|| = " + fmt(norm_c) + ", " +
             fmt(seconds) + "s");
    return out;
}

// 2. radius 2 with quarter turn rate: f = 4 b0^2 = 1
Outcome criterion_scaling_law() {
    Outcome out;
    RotationSurface surf = flat_family(2.0, 0.5, 0.0);
    const FlatClassification cls =
        classify_flat_surface(surf, 16, 16, 1e-3, Thresholds{}, LaplacianSource::Numeric);
    if (cls.fit.kind != PointwiseKind::First)
        out.fail(std::string("kind = ") + to_label(cls.fit.kind) + ", expected first");
    double worst = 0.0;
    for (double f : cls.fit.f_samples) worst = std::max(worst, std::fabs(f - 1.0));
    if (worst > 1e-4) out.fail("max |f - 1| = " + fmt(worst) + " > 1e-4");
    out.note("max |f - 1| = " + fmt(worst));
    return out;
}

// 3. the numeric Laplacian matches the closed form and converges at 2nd order
Outcome criterion_laplacian_oracle() {
    Outcome out;
    const char* specs[] = {
        "clifford",
        "family:logspiral(mu=0.5)",
        "family:logspiral(mu=1)",
        "family:logspiral(mu=2)",
        "line(p=1,q=0,u=0,v=1)",
    };
    std::mt19937_64 rng(20240819);
    for (const char* spec : specs) {
        RotationSurface surf = make_surface(parse_profile_spec(spec));
        const ImmersionMap map = rotation_map(surf);
        const double inset = 0.05;
        std::uniform_real_distribution<double> s_pick(surf.s_range.lo + inset,
                                                      surf.s_range.hi - inset);
        std::uniform_real_distribution<double> t_pick(surf.t_range.lo + inset,
                                                      surf.t_range.hi - inset);
        double max_h = 0.0, max_h2 = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double s = s_pick(rng), t = t_pick(rng);
            const Bivector4 closed = frame_biv_to_fixed(laplacian_gauss_closed(surf, s),
                                                        closed_frame(surf, s, t));
            max_h = std::max(max_h, biv_norm(laplacian_numeric(map, s, t, 1e-3) - closed));
            max_h2 = std::max(max_h2, biv_norm(laplacian_numeric(map, s, t, 5e-4) - closed));
        }
        if (max_h > 1e-4)
            out.fail(std::string(spec) + ": max error " + fmt(max_h) + " > 1e-4 at h=1e-3");
        if (max_h2 > 1e-12 && max_h / max_h2 < 3.0)
            out.fail(std::string(spec) + ": halving h gave ratio " + fmt(max_h / max_h2) +
                     " < 3");
    }
    out.note("50 random points per family, h = 1e-3 then 5e-4");
    return out;
}

// 4. spiral Laplacian pattern (4 mu^2 a^2, 2 mu a^2, 0, 0, -2 mu a^2, 0),
//    and no pointwise relation fits it
Outcome criterion_spiral_pattern() {
    Outcome out;
    const double mu = 1.0, s0 = 1.0;
    ProfileCurve p = make_family(Family::LogSpiral, {{"mu", mu}, {"s0", s0}});
    RotationSurface surf = make_surface(p);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double s =
            surf.s_range.lo + (surf.s_range.hi - surf.s_range.lo) * i / 200.0;
        const double a = 1.0 / (s + s0);
        const FrameBivector lap = laplacian_gauss_closed(surf, s);
        const double want[6] = {4.0 * mu * mu * a * a, 2.0 * mu * a * a, 0.0, 0.0,
                                -2.0 * mu * a * a, 0.0};
        for (int k = 0; k < 6; ++k)
            worst = std::max(worst, std::fabs(lap.c[static_cast<std::size_t>(k)] - want[k]));
    }
    if (worst > 1e-12) out.fail("max coefficient deviation " + fmt(worst) + " > 1e-12");

    const auto samples = build_gauss_samples(surf, 12, 12, 1e-3, LaplacianSource::Closed);
    const PointwiseFit fit = second_kind_fit(samples);
    if (fit.kind != PointwiseKind::None)
        out.fail(std::string("classifier returned ") + to_label(fit.kind) + ", expected none");
    out.note("max coefficient deviation " + fmt(worst) + ", classifier " +
             to_label(fit.kind));
    return out;
}

// 5. compatibility identities along every built-in unit-speed family
Outcome criterion_gauss_codazzi() {
    Outcome out;
    const char* specs[] = {
        "clifford",
        "circle(lambda=2,b0=0.5,d=0)",
        "family:logspiral(mu=0.5)",
        "family:logspiral(mu=1)",
        "line(p=1,q=0,u=0,v=1)",
    };
    double worst = 0.0;
    for (const char* spec : specs) {
        RotationSurface surf = make_surface(parse_profile_spec(spec));
        for (int i = 0; i < 200; ++i) {
            const double s =
                surf.s_range.lo + (surf.s_range.hi - surf.s_range.lo) * (i + 0.5) / 200.0;
            const auto [gauss, codazzi] = gauss_codazzi_residual(surf, s);
            worst = std::max(worst, std::max(gauss, codazzi));
            if (gauss > 1e-8 || codazzi > 1e-8) {
                out.fail(std::string(spec) + ": residual " + fmt(std::max(gauss, codazzi)) +
                         " > 1e-8 at s=" + fmt(s));
                break;
            }
        }
    }
    out.note("200 samples per family, worst residual " + fmt(worst));
    return out;
}

// 6. flatness: closed K vanishes, the numeric oracle agrees, and the raw
//    exponential-circle parametrization is numerically flat too
Outcome criterion_flatness() {
    Outcome out;
    const char* flat_specs[] = {"clifford", "circle(lambda=2,b0=0.5,d=0)",
                                "family:logspiral(mu=1)"};
    for (const char* spec : flat_specs) {
        RotationSurface surf = make_surface(parse_profile_spec(spec));
        const ImmersionMap map = rotation_map(surf);
        const double inset = 0.05;
        double max_closed = 0.0, max_numeric = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double s = surf.s_range.lo + inset +
                             (surf.s_range.hi - surf.s_range.lo - 2 * inset) * i / 11.0;
            max_closed = std::max(max_closed, std::fabs(gaussian_curvature(surf, s)));
            for (int j = 0; j < 12; ++j) {
                const double t = surf.t_range.lo + inset +
                                 (surf.t_range.hi - surf.t_range.lo - 2 * inset) * j / 11.0;
                const ImmersionSample smp = numeric_jets(map, s, t, 1e-3);
                const Frame frame = gram_schmidt_frame(smp);
                max_numeric =
                    std::max(max_numeric, std::fabs(gaussian_curvature_numeric(smp, frame)));
            }
        }
        if (max_closed > 1e-10)
            out.fail(std::string(spec) + ": closed |K| = " + fmt(max_closed) + " > 1e-10");
        if (max_numeric > 1e-6)
            out.fail(std::string(spec) + ": numeric |K| = " + fmt(max_numeric) + " > 1e-6");
    }

    ProfileCurve vr = make_family(Family::Vranceanu, {{"k", 0.3}});
    const ImmersionMap raw = profile_rotation_map(vr, Interval{-1.5, 1.5}, Interval{0.0, 2.0 * kPi});
    double max_raw = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double s = -1.4 + 2.8 * i / 11.0;
        for (int j = 0; j < 12; ++j) {
            const double t = 0.1 + 6.0 * j / 11.0;
            const ImmersionSample smp = numeric_jets(raw, s, t, 1e-3);
            const Frame frame = gram_schmidt_frame(smp);
            max_raw = std::max(max_raw, std::fabs(gaussian_curvature_numeric(smp, frame)));
        }
    }
    if (max_raw > 1e-5)
        out.fail("raw exponential-circle |K_numeric| = " + fmt(max_raw) + " > 1e-5");
    out.note("raw parametrization max |K_numeric| = " + fmt(max_raw));
    return out;
}

// 7. moving frame: orthonormality and the eight derivative identities
Outcome criterion_frame_identities() {
    Outcome out;
    const char* specs[] = {"clifford", "family:logspiral(mu=1)", "line(p=1,q=0,u=0,v=1)"};
    std::mt19937_64 rng(424242);
    double worst_gram = 0.0, worst_ident = 0.0;
    for (const char* spec : specs) {
        RotationSurface surf = make_surface(parse_profile_spec(spec));
        std::uniform_real_distribution<double> s_pick(surf.s_range.lo + 0.05,
                                                      surf.s_range.hi - 0.05);
        std::uniform_real_distribution<double> t_pick(surf.t_range.lo + 0.05,
                                                      surf.t_range.hi - 0.05);
        for (int i = 0; i < 25; ++i) {
            const double s = s_pick(rng), t = t_pick(rng);
            worst_gram = std::max(worst_gram, frame_gram_deviation(closed_frame(surf, s, t)));
            worst_ident = std::max(worst_ident, frame_derivative_residual(surf, s, t, 1e-4));
        }
    }
    if (worst_gram > 1e-12) out.fail("frame Gram deviation " + fmt(worst_gram) + " > 1e-12");
    if (worst_ident > 1e-5)
        out.fail("frame derivative identity residual " + fmt(worst_ident) + " > 1e-5");
    out.note("Gram " + fmt(worst_gram) + ", identities " + fmt(worst_ident));
    return out;
}

// 8. the matrix representation is an algebra isomorphism
Outcome criterion_bicomplex_isomorphism() {
    Outcome out;
    std::mt19937_64 rng(8080);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    auto random_bc = [&]() { return Bicomplex{pick(rng), pick(rng), pick(rng), pick(rng)}; };
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const Bicomplex x = random_bc(), y = random_bc(), z = random_bc();
        const Mat4 lhs = to_matrix(bc_mul(x, y));
        const Mat4 rhs = mat_mul(to_matrix(x), to_matrix(y));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                worst = std::max(worst, std::fabs(lhs(r, c) - rhs(r, c)));
        worst = std::max(worst, bc_norm(bc_sub(bc_mul(x, y), bc_mul(y, x))));
        worst = std::max(
            worst, bc_norm(bc_sub(bc_mul(bc_mul(x, y), z), bc_mul(x, bc_mul(y, z)))));
    }
    if (worst > 1e-12) out.fail("isomorphism/axiom error " + fmt(worst) + " > 1e-12");

    bool rejected = false;
    try {
        bc_inverse(Bicomplex{1.0, 0.0, 0.0, 1.0});
    } catch (const ZeroDivisorError&) {
        rejected = true;
    }
    if (!rejected) out.fail("1 + ij was inverted; it is a zero divisor");
    out.note("1000 random triples, worst error " + fmt(worst) +
             ", 1 + ij rejected as a zero divisor");
    return out;
}

// 9. group structure of the surfaces under the bicomplex product
Outcome criterion_group_structure() {
    Outcome out;
    const std::vector<double> ss{-0.75, -0.375, 0.0, 0.375, 0.75};
    const std::vector<double> ts{-1.5, -0.75, 0.0, 0.75, 1.5};

    const GroupCheckReport cf =
        group_axiom_check(surface_group_map(parse_profile_spec("clifford")), ss, ts);
    const double cf_worst = std::max(
        cf.closure_residual, std::max(cf.inverse_residual, cf.identity_residual));
    if (!cf.pass || cf_worst > 1e-12)
        out.fail("unit circle surface: residual " + fmt(cf_worst) + ", pass=" +
                 (cf.pass ? "true" : "false"));

    const GroupCheckReport r2 = group_axiom_check(
        surface_group_map(parse_profile_spec("circle(lambda=2,b0=0.5,d=0)")), ss, ts);
    if (r2.closure_pass || r2.closure_residual < 1.0)
        out.fail("radius-2 circle: closure residual " + fmt(r2.closure_residual) +
                 ", expected >= 1 and a failing verdict");

    const GroupCheckReport vr = group_axiom_check(
        surface_group_map(parse_profile_spec("family:vranceanu(k=0.3)")), ss, ts);
    if (!vr.pass) out.fail("exponential-circle surface failed the group axioms");

    double worst_hyper = 0.0;
    for (const char* spec :
         {"clifford", "circle(lambda=2,b0=0.5,d=0)", "family:vranceanu(k=0.3)"}) {
        const ProfileCurve p = parse_profile_spec(spec);
        for (double s : ss) {
            for (double t : ts) {
                const Bicomplex x = embed_bicomplex(p, s, t);
                worst_hyper =
                    std::max(worst_hyper, std::fabs(x.x1 * x.x4 - x.x2 * x.x3));
            }
        }
    }
    if (worst_hyper > 1e-12)
        out.fail("hyperquadric residual " + fmt(worst_hyper) + " > 1e-12");
    out.note("closure residual for radius 2 = " + fmt(r2.closure_residual) +
             ", hyperquadric " + fmt(worst_hyper));
    return out;
}

// 10. expression jets against an independent finite-difference oracle, and
//     structured errors on malformed input
Outcome criterion_expression_jets() {
    Outcome out;
    std::mt19937_64 rng(987654321);
    std::uniform_real_distribution<double> s_pick(0.3, 1.7);
    int accepted = 0, attempts = 0;
    double worst_rel = 0.0;
    while (accepted < 100 && attempts < 3000) {
        ++attempts;
        const std::string src = fuzz::random_expr(rng, 3);
        const double s0 = s_pick(rng);
        try {
            const ExprPtr ast = parse_expr(src);
            const Jet3 jet = eval_jet(*ast, s0);
            const fuzz::FdJet fd = fuzz::fd_jet(*ast, s0, 1e-4L);
            if (!fd.finite) continue;
            const double scale =
                std::max({1.0, std::fabs(jet.f), std::fabs(jet.d1), std::fabs(jet.d2),
                          std::fabs(jet.d3)});
            if (scale > 1e6) continue;
            const double rel =
                std::max({std::fabs(jet.f - static_cast<double>(fd.f)),
                          std::fabs(jet.d1 - static_cast<double>(fd.d1)),
                          std::fabs(jet.d2 - static_cast<double>(fd.d2)),
                          std::fabs(jet.d3 - static_cast<double>(fd.d3))}) /
                scale;
            ++accepted;
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-6) {
                out.fail("relative error " + fmt(rel) + " > 1e-6 for " + src);
                break;
            }
        } catch (const Error&) {
            continue; // out-of-domain draw; the generator retries
        }
    }
    if (accepted < 100)
        out.fail("only " + std::to_string(accepted) + " of 100 expressions accepted");

    const char* malformed[] = {"", "1+*2", "cos(", "cot(s)", "1+2)", "((s)", "s s", "^2", "1..5"};
    for (const char* bad : malformed) {
        try {
            parse_expr(bad);
            out.fail(std::string("parser accepted \"") + bad + "\"");
        } catch (const ParseError&) {
            // structured failure with an offset: exactly what is required
        } catch (const std::exception& e) {
            out.fail(std::string("unstructured error for \"") + bad + "\": " + e.what());
        }
    }
    out.note(std::to_string(accepted) + " expressions, worst relative error " + fmt(worst_rel));
    return out;
}

struct Criterion {
    int number;
    const char* label;
    Outcome (*run)();
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {1, "flat torus classifier constants", criterion_flat_torus_constants},
        {2, "scaling law f = 4 b0^2", criterion_scaling_law},
        {3, "Laplacian oracle equivalence", criterion_laplacian_oracle},
        {4, "spiral Laplacian pattern", criterion_spiral_pattern},
        {5, "Gauss-Codazzi residuals", criterion_gauss_codazzi},
        {6, "flatness", criterion_flatness},
        {7, "frame identities", criterion_frame_identities},
        {8, "bicomplex isomorphism", criterion_bicomplex_isomorphism},
        {9, "group structure", criterion_group_structure},
        {10, "expression jets and parse errors", criterion_expression_jets},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("unexpected exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("criterion %2d %-38s %s%s%s\n", c.number, c.label,
                    out.pass ? "PASS" : "FAIL", out.detail.empty() ? "" : "  -- ",
                    out.detail.c_str());
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
