#include "rot4/pointwise.hpp"

#include <algorithm>
#include <cmath>

#include "rot4/errors.hpp"

namespace rot4 {

const char* to_label(PointwiseKind kind) {
    switch (kind) {
    case PointwiseKind::First: return "first";
    case PointwiseKind::Second: return "second";
    case PointwiseKind::Harmonic: return "harmonic";
    case PointwiseKind::None: return "none";
    }
    return "none";
}

void validate_samples(const std::vector<GaussSample>& samples) {
    for (const GaussSample& smp : samples) {
        if (!smp.G.finite() || !smp.dG.finite())
            throw FrameError("non-finite Gauss sample (id " + std::to_string(smp.id) + ")");
        double n = biv_norm(smp.G);
        if (std::abs(n - 1.0) > 1e-8)
            throw FrameError("Gauss map is not unit at sample " + std::to_string(smp.id) +
                             " (norm " + std::to_string(n) + ")");
        if (std::abs(pluecker_residual(smp.G)) > 1e-8)
            throw FrameError("Gauss map is not a simple bivector at sample " +
                             std::to_string(smp.id));
    }
}

std::pair<bool, std::vector<double>> first_kind_test(const std::vector<GaussSample>& samples,
                                                     const Thresholds& thresholds) {
    if (samples.empty()) throw DomainError("first-kind test needs at least one sample");
    validate_samples(samples);
    std::vector<double> f;
    f.reserve(samples.size());
    bool parallel = true;
    for (const GaussSample& smp : samples) {
        double mag = biv_norm(smp.dG);
        if (mag <= thresholds.harmonic) {
            f.push_back(0.0);
            continue;
        }
        double fi = biv_inner(smp.dG, smp.G);
        f.push_back(fi);
        Bivector4 off = smp.dG - fi * smp.G;
        if (biv_norm(off) > thresholds.residual * mag) parallel = false;
    }
    return {parallel, std::move(f)};
}

namespace {

struct AlsState {
    Bivector4 C;
    std::vector<double> f;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// One alternating-least-squares run over the retained samples.
AlsState run_als(const std::vector<const GaussSample*>& pts, Bivector4 C0,
                 const Thresholds& th, bool optimize_c) {
    AlsState st;
    st.C = C0;
    st.f.assign(pts.size(), 0.0);

    double denom = 0.0;
    for (const GaussSample* p : pts) denom += biv_inner(p->dG, p->dG);

    double prev_residual = -1.0;
    for (int iter = 1; iter <= th.max_iterations; ++iter) {
        st.iterations = iter;
        // f-step: project each dG onto G + C.
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Bivector4 base = pts[i]->G + st.C;
            double b2 = biv_inner(base, base);
            st.f[i] = b2 > 1e-14 ? biv_inner(pts[i]->dG, base) / b2 : 0.0;
        }
        // C-step: minimize sum ||dG_i - f_i G_i - f_i C||^2.
        if (optimize_c) {
            Bivector4 num;
            double den = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                num = num + st.f[i] * (pts[i]->dG - st.f[i] * pts[i]->G);
                den += st.f[i] * st.f[i];
            }
            if (den > 1e-14) st.C = num / den;
        }
        double err2 = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Bivector4 r = pts[i]->dG - st.f[i] * (pts[i]->G + st.C);
            err2 += biv_inner(r, r);
        }
        st.residual = denom > 0.0 ? std::sqrt(err2 / denom) : 0.0;
        if (prev_residual >= 0.0 && std::abs(prev_residual - st.residual) < th.change_tol) {
            st.converged = true;
            break;
        }
        prev_residual = st.residual;
    }
    return st;
}

} // namespace

PointwiseFit second_kind_fit(const std::vector<GaussSample>& samples,
                             const Thresholds& thresholds) {
    if (samples.size() < 7)
        throw DomainError("the fit needs at least 7 samples (6 unknowns in C plus scale)");
    validate_samples(samples);

    PointwiseFit out;
    std::vector<const GaussSample*> pts;
    for (const GaussSample& smp : samples) {
        if (biv_norm(smp.dG) <= thresholds.harmonic) {
            ++out.harmonic_points;
        } else {
            pts.push_back(&smp);
        }
    }
    if (pts.empty()) {
        out.kind = PointwiseKind::Harmonic;
        out.converged = true;
        out.note = "Laplacian vanishes at every sample";
        return out;
    }

    AlsState best = run_als(pts, Bivector4{}, thresholds, true);
    if (best.residual > thresholds.residual) {
        // Second start aimed at genuine second-kind data: average of
        // dG_i / <dG_i, G_i> - G_i over samples where the projection is
        // bounded away from zero.
        Bivector4 seed;
        int used = 0;
        for (const GaussSample* p : pts) {
            double proj = biv_inner(p->dG, p->G);
            if (std::abs(proj) > 1e-6) {
                seed = seed + (p->dG / proj - p->G);
                ++used;
            }
        }
        if (used > 0) {
            AlsState retry = run_als(pts, seed / double(used), thresholds, true);
            if (retry.residual < best.residual) best = retry;
        }
    }

    out.C = best.C;
    out.f_samples = best.f;
    out.fitted_ids.reserve(pts.size());
    for (const GaussSample* p : pts) out.fitted_ids.push_back(p->id);
    out.residual = best.residual;
    out.iterations = best.iterations;
    out.converged = best.converged;

    if (best.residual <= thresholds.residual) {
        out.kind = biv_norm(best.C) <= thresholds.c_zero ? PointwiseKind::First
                                                         : PointwiseKind::Second;
    } else {
        out.kind = PointwiseKind::None;
        out.note = best.converged ? "converged residual above threshold"
                                  : "alternating fit did not converge";
    }
    return out;
}

std::vector<GaussSample> build_gauss_samples(const RotationSurface& surf, int ns, int nt,
                                             double h, LaplacianSource source) {
    if (ns < 2 || nt < 2) throw DomainError("sample grid needs at least 2x2 points");
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");

    ImmersionMap map = rotation_map(surf);
    double inset = 1.5 * h;
    double s_lo = surf.s_range.lo + inset, s_hi = surf.s_range.hi - inset;
    double t_lo = surf.t_range.lo + inset, t_hi = surf.t_range.hi - inset;
    if (!(s_hi > s_lo) || !(t_hi > t_lo))
        throw DomainError("surface ranges are too small for the difference stencil");

    std::vector<GaussSample> out;
    out.reserve(std::size_t(ns) * std::size_t(nt));
    for (int i = 0; i < ns; ++i) {
        double s = s_lo + (s_hi - s_lo) * i / double(ns - 1);
        for (int j = 0; j < nt; ++j) {
            double t = t_lo + (t_hi - t_lo) * j / double(nt - 1);
            GaussSample smp;
            smp.id = i * nt + j;
            smp.s = s;
            smp.t = t;
            ImmersionSample jet = analytic_sample(surf, s, t);
            smp.G = gauss_map_raw(jet.X_s, jet.X_t);
            if (source == LaplacianSource::Numeric) {
                smp.dG = laplacian_numeric(map, s, t, h);
            } else {
                smp.dG = frame_biv_to_fixed(laplacian_gauss_closed(surf, s),
                                            closed_frame(surf, s, t));
            }
            out.push_back(smp);
        }
    }
    return out;
}

FitDiagnostics fit_diagnostics(const RotationSurface& surf,
                               const std::vector<GaussSample>& samples,
                               const PointwiseFit& fit) {
    FitDiagnostics diag;
    // f per sample id, for the transport-law residual below.
    std::vector<double> f_by_id;
    if (!fit.fitted_ids.empty()) {
        int max_id = *std::max_element(fit.fitted_ids.begin(), fit.fitted_ids.end());
        f_by_id.assign(std::size_t(max_id) + 1, std::nan(""));
        for (std::size_t i = 0; i < fit.fitted_ids.size(); ++i)
            f_by_id[std::size_t(fit.fitted_ids[i])] = fit.f_samples[i];
    }

    for (const GaussSample& smp : samples) {
        Frame e = closed_frame(surf, smp.s, smp.t);
        double c12 = biv_inner(fit.C, wedge(e[0], e[1]));
        double c13 = biv_inner(fit.C, wedge(e[0], e[2]));
        double c14 = biv_inner(fit.C, wedge(e[0], e[3]));
        double c23 = biv_inner(fit.C, wedge(e[1], e[2]));
        double c24 = biv_inner(fit.C, wedge(e[1], e[3]));
        double c34 = biv_inner(fit.C, wedge(e[2], e[3]));
        (void)c12;
        diag.c14_max = std::max(diag.c14_max, std::abs(c14));
        diag.c23_max = std::max(diag.c23_max, std::abs(c23));
        diag.c34_max = std::max(diag.c34_max, std::abs(c34));
        diag.c13_plus_c24_max = std::max(diag.c13_plus_c24_max, std::abs(c13 + c24));
    }

    // Transport law f' = -2 a f along the meridian, differenced between
    // consecutive fitted samples sharing a t value.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            if (std::abs(samples[i].t - samples[j].t) > 1e-12) continue;
            double ds = samples[j].s - samples[i].s;
            if (std::abs(ds) < 1e-9) continue;
            auto fid = [&](const GaussSample& s) -> double {
                std::size_t id = std::size_t(s.id);
                return id < f_by_id.size() ? f_by_id[id] : std::nan("");
            };
            double fi = fid(samples[i]), fj = fid(samples[j]);
            if (std::isnan(fi) || std::isnan(fj)) continue;
            double mid_s = 0.5 * (samples[i].s + samples[j].s);
            double a_mid = invariants(surf, mid_s).a;
            double f_mid = 0.5 * (fi + fj);
            double lhs = (fj - fi) / ds;
            diag.f_ode_max = std::max(diag.f_ode_max, std::abs(lhs + 2.0 * a_mid * f_mid));
            diag.f_ode_checked = true;
            break; // only the nearest s-neighbour in this t-column
        }
    }
    return diag;
}

FlatClassification classify_flat_surface(const RotationSurface& surf, int ns, int nt, double h,
                                         const Thresholds& thresholds, LaplacianSource source) {
    FlatClassification out;
    const int n_flat = 200;
    for (int i = 0; i <= n_flat; ++i) {
        double s = surf.s_range.lo + (surf.s_range.hi - surf.s_range.lo) * i / double(n_flat);
        out.max_abs_k = std::max(out.max_abs_k, std::abs(gaussian_curvature(surf, s)));
    }
    if (out.max_abs_k > 1e-8)
        throw DomainError("the flat-surface classification requires K = 0; max |K| = " +
                          std::to_string(out.max_abs_k));

    std::vector<GaussSample> samples = build_gauss_samples(surf, ns, nt, h, source);
    out.fit = second_kind_fit(samples, thresholds);
    out.fit_pointwise = out.fit.kind != PointwiseKind::None;

    // Profile-shape criterion: circle profile with b0^2 lambda^2 = 1, or a
    // planar meridian (b = c = 0 along the sampled range).
    const auto& params = surf.profile.params;
    auto lam = params.find("lambda");
    auto b0 = params.find("b0");
    if (lam != params.end() && b0 != params.end() &&
        std::abs(lam->second * lam->second * b0->second * b0->second - 1.0) <= 1e-12) {
        out.profile_pointwise = true;
        out.profile_rule = "circle profile with b0^2 lambda^2 = 1";
    } else {
        double max_b = 0.0, max_c = 0.0;
        for (int i = 0; i <= n_flat; ++i) {
            double s =
                surf.s_range.lo + (surf.s_range.hi - surf.s_range.lo) * i / double(n_flat);
            InvariantTriple iv = invariants(surf, s);
            max_b = std::max(max_b, std::abs(iv.b));
            max_c = std::max(max_c, std::abs(iv.c));
        }
        if (max_b <= 1e-10 && max_c <= 1e-10) {
            out.profile_pointwise = true;
            out.profile_rule = "planar meridian (totally geodesic)";
        } else {
            out.profile_pointwise = false;
            out.profile_rule = "profile is neither a flat circle nor planar";
        }
    }
    out.agree = out.fit_pointwise == out.profile_pointwise;
    return out;
}

} // namespace rot4
