#include "rot4/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "rot4/errors.hpp"

namespace rot4 {

namespace {

void require_inside(const ImmersionMap& X, double s, double t, double s_margin,
                    double t_margin) {
    if (!X.s_domain.contains(s - s_margin) || !X.s_domain.contains(s + s_margin) ||
        !X.t_domain.contains(t - t_margin) || !X.t_domain.contains(t + t_margin))
        throw DomainError("difference stencil leaves the immersion domain at (s=" +
                          std::to_string(s) + ", t=" + std::to_string(t) + ")");
}

} // namespace

Vec4 ImmersionMap::eval(double s, double t) const {
    if (!s_domain.contains(s) || !t_domain.contains(t))
        throw DomainError("immersion evaluated outside its domain at (s=" + std::to_string(s) +
                          ", t=" + std::to_string(t) + ")");
    return value(s, t);
}

void ImmersionMap::first_partials(double s, double t, Vec4& X_s, Vec4& X_t) const {
    if (jet1) {
        auto [xs, xt] = jet1(s, t);
        X_s = xs;
        X_t = xt;
        return;
    }
    double h = fd_step;
    X_s = (eval(s + h, t) - eval(s - h, t)) / (2.0 * h);
    X_t = (eval(s, t + h) - eval(s, t - h)) / (2.0 * h);
}

ImmersionSample numeric_jets(const ImmersionMap& X, double s, double t, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    require_inside(X, s, t, h, h);

    Vec4 c = X.eval(s, t);
    Vec4 p0 = X.eval(s + h, t), m0 = X.eval(s - h, t);
    Vec4 zp = X.eval(s, t + h), zm = X.eval(s, t - h);
    Vec4 pp = X.eval(s + h, t + h), pm = X.eval(s + h, t - h);
    Vec4 mp = X.eval(s - h, t + h), mm = X.eval(s - h, t - h);

    ImmersionSample out;
    out.s = s;
    out.t = t;
    out.position = c;
    out.X_s = (p0 - m0) / (2.0 * h);
    out.X_t = (zp - zm) / (2.0 * h);
    out.X_ss = (p0 - c * 2.0 + m0) / (h * h);
    out.X_tt = (zp - c * 2.0 + zm) / (h * h);
    out.X_st = (pp - pm - mp + mm) / (4.0 * h * h);
    return out;
}

MetricComponents metric_components(const ImmersionSample& sample) {
    MetricComponents m;
    m.E = dot(sample.X_t, sample.X_t);
    m.F = dot(sample.X_t, sample.X_s);
    m.G = dot(sample.X_s, sample.X_s);
    m.det = m.E * m.G - m.F * m.F;
    if (!(m.det > 1e-12))
        throw DegenerateError("metric is degenerate (det = " + std::to_string(m.det) + ")");
    return m;
}

namespace {

Vec4 project_out(Vec4 w, const Vec4* basis, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) w = w - dot(w, basis[i]) * basis[i];
    return w;
}

// Deterministic completion: the standard basis vector whose residual
// against the partial frame is largest (ties to the lowest index).
Vec4 complete_direction(const Vec4* basis, std::size_t n) {
    Vec4 best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < 4; ++k) {
        Vec4 eps;
        eps[k] = 1.0;
        Vec4 r = project_out(eps, basis, n);
        double rn = norm(r);
        if (rn > best_norm + 1e-15) {
            best_norm = rn;
            best = r;
        }
    }
    if (!(best_norm > 1e-6))
        throw DegenerateError("cannot complete an orthonormal frame");
    return best / best_norm;
}

} // namespace

Frame gram_schmidt_frame(const ImmersionSample& sample, const Vec4* normal_hint3,
                         const Vec4* normal_hint4) {
    metric_components(sample); // rejects degenerate tangent data

    double nt = norm(sample.X_t);
    if (!(nt > 1e-9)) throw DegenerateError("X_t vanishes; no rotation direction");
    Frame f;
    f[0] = sample.X_t / nt;
    Vec4 r = sample.X_s - dot(sample.X_s, f[0]) * f[0];
    double nr = norm(r);
    if (!(nr > 1e-9)) throw DegenerateError("tangent plane degenerates (X_s parallel to X_t)");
    f[1] = r / nr;

    auto place_normal = [&](const Vec4* hint, std::size_t n) -> Vec4 {
        if (hint) {
            Vec4 h = project_out(*hint, f.data(), n);
            double hn = norm(h);
            if (hn > 1e-6) return h / hn;
        }
        return complete_direction(f.data(), n);
    };
    f[2] = place_normal(normal_hint3, 2);
    f[3] = place_normal(normal_hint4, 3);
    return f;
}

SecondFundamental second_fundamental_numeric(const ImmersionSample& sample, const Frame& frame) {
    double gss = dot(sample.X_s, sample.X_s);
    double gst = dot(sample.X_s, sample.X_t);
    double gtt = dot(sample.X_t, sample.X_t);
    double det = gss * gtt - gst * gst;
    if (!(det > 1e-12)) throw DegenerateError("metric is degenerate");

    // e_i = alpha_i X_s + beta_i X_t, solved from the metric Gram system.
    struct Coeff { double alpha, beta; };
    auto decompose = [&](const Vec4& e) {
        double rs = dot(e, sample.X_s), rt = dot(e, sample.X_t);
        return Coeff{(gtt * rs - gst * rt) / det, (gss * rt - gst * rs) / det};
    };
    Coeff c1 = decompose(frame[0]), c2 = decompose(frame[1]);

    SecondFundamental h;
    auto fill = [&](const Vec4& er, double& h11, double& h12, double& h22) {
        double pss = dot(sample.X_ss, er);
        double pst = dot(sample.X_st, er);
        double ptt = dot(sample.X_tt, er);
        auto entry = [&](const Coeff& a, const Coeff& b) {
            return a.alpha * b.alpha * pss + (a.alpha * b.beta + a.beta * b.alpha) * pst +
                   a.beta * b.beta * ptt;
        };
        h11 = entry(c1, c1);
        h12 = entry(c1, c2);
        h22 = entry(c2, c2);
    };
    fill(frame[2], h.h3_11, h.h3_12, h.h3_22);
    fill(frame[3], h.h4_11, h.h4_12, h.h4_22);
    return h;
}

double gaussian_curvature_numeric(const ImmersionSample& sample, const Frame& frame) {
    SecondFundamental h = second_fundamental_numeric(sample, frame);
    return h.h3_11 * h.h3_22 - h.h3_12 * h.h3_12 + h.h4_11 * h.h4_22 - h.h4_12 * h.h4_12;
}

Bivector4 gauss_map(const ImmersionSample& sample, const Frame& frame) {
    (void)sample;
    return wedge(frame[0], frame[1]);
}

Bivector4 gauss_map_raw(const Vec4& X_s, const Vec4& X_t) {
    Bivector4 w = wedge(X_t, X_s);
    double n = biv_norm(w);
    if (!(n > 1e-12)) throw DegenerateError("tangent plane degenerates; Gauss map undefined");
    return w / n;
}

namespace {

struct FluxDensity {
    double Wgss, Wgst, Wgtt; // W g^{alpha beta}
    double W;
};

FluxDensity flux_density(const ImmersionMap& X, double s, double t) {
    Vec4 Xs, Xt;
    X.first_partials(s, t, Xs, Xt);
    double gss = dot(Xs, Xs), gst = dot(Xs, Xt), gtt = dot(Xt, Xt);
    double det = gss * gtt - gst * gst;
    if (!(det > 1e-12)) throw DegenerateError("metric is degenerate inside the Laplacian stencil");
    double W = std::sqrt(det);
    return {W * gtt / det, -W * gst / det, W * gss / det, W};
}

Bivector4 gauss_at(const ImmersionMap& X, double s, double t) {
    Vec4 Xs, Xt;
    X.first_partials(s, t, Xs, Xt);
    return gauss_map_raw(Xs, Xt);
}

} // namespace

Bivector4 laplacian_numeric(const ImmersionMap& X, double s, double t, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    double margin = h + (X.jet1 ? 0.0 : X.fd_step);
    require_inside(X, s, t, margin, margin);

    Bivector4 F00 = gauss_at(X, s, t);
    Bivector4 Fp0 = gauss_at(X, s + h, t), Fm0 = gauss_at(X, s - h, t);
    Bivector4 F0p = gauss_at(X, s, t + h), F0m = gauss_at(X, s, t - h);
    Bivector4 Fpp = gauss_at(X, s + h, t + h), Fpm = gauss_at(X, s + h, t - h);
    Bivector4 Fmp = gauss_at(X, s - h, t + h), Fmm = gauss_at(X, s - h, t - h);

    FluxDensity m00 = flux_density(X, s, t);
    FluxDensity mp0 = flux_density(X, s + h, t), mm0 = flux_density(X, s - h, t);
    FluxDensity m0p = flux_density(X, s, t + h), m0m = flux_density(X, s, t - h);

    double inv2h = 1.0 / (2.0 * h);
    double invh2 = 1.0 / (h * h);

    Bivector4 Fs = (Fp0 - Fm0) * inv2h;
    Bivector4 Ft = (F0p - F0m) * inv2h;
    Bivector4 Fss = (Fp0 - F00 * 2.0 + Fm0) * invh2;
    Bivector4 Ftt = (F0p - F00 * 2.0 + F0m) * invh2;
    Bivector4 Fst = (Fpp - Fpm - Fmp + Fmm) * (0.25 * invh2);

    // Delta f = -[g^{ab} f_ab + b^b f_b], b^b = (1/W) d_a(W g^{ab}).
    double Ass = m00.Wgss / m00.W, Ast = m00.Wgst / m00.W, Att = m00.Wgtt / m00.W;
    double bs = ((mp0.Wgss - mm0.Wgss) + (m0p.Wgst - m0m.Wgst)) * inv2h / m00.W;
    double bt = ((mp0.Wgst - mm0.Wgst) + (m0p.Wgtt - m0m.Wgtt)) * inv2h / m00.W;

    return -(Fss * Ass + Fst * (2.0 * Ast) + Ftt * Att + Fs * bs + Ft * bt);
}

} // namespace rot4
