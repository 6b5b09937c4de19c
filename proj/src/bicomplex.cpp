#include "rot4/bicomplex.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <utility>

#include "rot4/errors.hpp"
#include "rot4/exterior.hpp"

namespace rot4 {
namespace {

double max_component(const Bicomplex& x) {
    return std::max(std::max(std::fabs(x.x1), std::fabs(x.x2)),
                    std::max(std::fabs(x.x3), std::fabs(x.x4)));
}

std::string fmt_coeff(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

bool Bicomplex::finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) && std::isfinite(x4);
}

Bicomplex bc_identity() { return Bicomplex{1.0, 0.0, 0.0, 0.0}; }

Bicomplex bc_add(const Bicomplex& x, const Bicomplex& y) {
    return Bicomplex{x.x1 + y.x1, x.x2 + y.x2, x.x3 + y.x3, x.x4 + y.x4};
}

Bicomplex bc_sub(const Bicomplex& x, const Bicomplex& y) {
    return Bicomplex{x.x1 - y.x1, x.x2 - y.x2, x.x3 - y.x3, x.x4 - y.x4};
}

Bicomplex bc_scale(double k, const Bicomplex& x) {
    return Bicomplex{k * x.x1, k * x.x2, k * x.x3, k * x.x4};
}

Bicomplex bc_mul(const Bicomplex& x, const Bicomplex& y) {
    return Bicomplex{
        x.x1 * y.x1 - x.x2 * y.x2 - x.x3 * y.x3 + x.x4 * y.x4,
        x.x1 * y.x2 + x.x2 * y.x1 - x.x3 * y.x4 - x.x4 * y.x3,
        x.x1 * y.x3 + x.x3 * y.x1 - x.x2 * y.x4 - x.x4 * y.x2,
        x.x1 * y.x4 + x.x4 * y.x1 + x.x2 * y.x3 + x.x3 * y.x2,
    };
}

double bc_norm(const Bicomplex& x) {
    return std::sqrt(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 + x.x4 * x.x4);
}

Mat4 mat_identity() {
    Mat4 r;
    for (int k = 0; k < 4; ++k) r(k, k) = 1.0;
    return r;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    }
    return r;
}

Mat4 to_matrix(const Bicomplex& x) {
    Mat4 g;
    g(0, 0) = x.x1; g(0, 1) = -x.x2; g(0, 2) = -x.x3; g(0, 3) = x.x4;
    g(1, 0) = x.x2; g(1, 1) = x.x1;  g(1, 2) = -x.x4; g(1, 3) = -x.x3;
    g(2, 0) = x.x3; g(2, 1) = -x.x4; g(2, 2) = x.x1;  g(2, 3) = -x.x2;
    g(3, 0) = x.x4; g(3, 1) = x.x3;  g(3, 2) = x.x2;  g(3, 3) = x.x1;
    return g;
}

Bicomplex from_matrix(const Mat4& g) {
    const Bicomplex x{g(0, 0), g(1, 0), g(2, 0), g(3, 0)};
    const Mat4 expected = to_matrix(x);
    double scale = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) scale = std::max(scale, std::fabs(g(r, c)));
    double deviation = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) deviation = std::max(deviation, std::fabs(g(r, c) - expected(r, c)));
    if (deviation > 1e-12 * std::max(1.0, scale)) {
        throw DomainError("matrix does not carry the bicomplex representation pattern");
    }
    return x;
}

Bicomplex conjugate(const Bicomplex& x, Conjugation which) {
    switch (which) {
        case Conjugation::T1: return Bicomplex{x.x1, -x.x2, x.x3, -x.x4};
        case Conjugation::T2: return Bicomplex{x.x1, x.x2, -x.x3, -x.x4};
        case Conjugation::T3: return Bicomplex{x.x1, -x.x2, -x.x3, x.x4};
    }
    throw ConfigError("unknown conjugation");
}

bool in_hyperquadric(const Bicomplex& x) {
    const double scale = max_component(x);
    if (scale == 0.0) return false;
    return std::fabs(x.x1 * x.x4 - x.x2 * x.x3) <= 1e-12 * scale * scale;
}

Bicomplex bc_inverse(const Bicomplex& x) {
    if (!x.finite()) throw DomainError("bicomplex components must be finite");
    const double scale = max_component(x);
    const double det_floor = 1e-12 * std::max(scale * scale * scale * scale, 1e-300);

    // Gauss-Jordan on [g(x) | I] with partial pivoting; the pivot product
    // tracks the determinant for the zero-divisor test.
    double a[4][8] = {};
    const Mat4 g = to_matrix(x);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) a[r][c] = g(r, c);
        a[r][4 + r] = 1.0;
    }
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (pivot != col) {
            for (int c = 0; c < 8; ++c) std::swap(a[pivot][c], a[col][c]);
            det = -det;
        }
        const double p = a[col][col];
        det *= p;
        if (std::fabs(p) < 1e-300) {
            throw ZeroDivisorError("bicomplex element is a zero divisor (singular representation)");
        }
        const double inv = 1.0 / p;
        for (int c = 0; c < 8; ++c) a[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 8; ++c) a[r][c] -= f * a[col][c];
        }
    }
    if (std::fabs(det) < det_floor) {
        throw ZeroDivisorError("bicomplex element is a zero divisor (determinant below tolerance)");
    }
    Mat4 ginv;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) ginv(r, c) = a[r][4 + c];
    return from_matrix(ginv);
}

std::string format_bicomplex(const Bicomplex& x) {
    const std::pair<double, const char*> terms[4] = {
        {x.x1, ""}, {x.x2, "i"}, {x.x3, "j"}, {x.x4, "ij"}};
    std::string out;
    for (const auto& [coeff, unit] : terms) {
        if (coeff == 0.0) continue;
        if (!out.empty() && coeff > 0.0) out += '+';
        out += fmt_coeff(coeff);
        out += unit;
    }
    if (out.empty()) out = "0";
    return out;
}

namespace {

struct LiteralScanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
};

}  // namespace

Bicomplex parse_bicomplex(const std::string& text) {
    LiteralScanner sc{text};
    if (sc.done()) throw ParseError("empty bicomplex literal", 0);

    Bicomplex out;
    bool first = true;
    while (!sc.done()) {
        double sign = 1.0;
        const std::size_t term_off = sc.pos;
        if (sc.text[sc.pos] == '+' || sc.text[sc.pos] == '-') {
            sign = sc.text[sc.pos] == '-' ? -1.0 : 1.0;
            ++sc.pos;
            sc.skip_space();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", sc.pos);
        }
        if (sc.pos >= sc.text.size()) throw ParseError("dangling sign", term_off);
        if (sc.text[sc.pos] == '+' || sc.text[sc.pos] == '-')
            throw ParseError("expected a number or unit (i, j, ij)", sc.pos);

        double coeff = 1.0;
        bool have_number = false;
        {
            const char* start = sc.text.c_str() + sc.pos;
            char* end = nullptr;
            const double v = std::strtod(start, &end);
            if (end != start && end[-1] != '+' && end[-1] != '-') {
                coeff = v;
                have_number = true;
                sc.pos += static_cast<std::size_t>(end - start);
            }
        }

        int unit = 0;  // 0: scalar, 1: i, 2: j, 3: ij
        if (sc.pos < sc.text.size()) {
            if (sc.text[sc.pos] == 'i') {
                if (sc.pos + 1 < sc.text.size() && sc.text[sc.pos + 1] == 'j') {
                    unit = 3;
                    sc.pos += 2;
                } else {
                    unit = 1;
                    ++sc.pos;
                }
            } else if (sc.text[sc.pos] == 'j') {
                unit = 2;
                ++sc.pos;
            }
        }
        if (!have_number && unit == 0) {
            throw ParseError("expected a number or unit (i, j, ij)", sc.pos);
        }
        if (!std::isfinite(coeff)) {
            throw ParseError("non-finite coefficient", term_off);
        }
        switch (unit) {
            case 0: out.x1 += sign * coeff; break;
            case 1: out.x2 += sign * coeff; break;
            case 2: out.x3 += sign * coeff; break;
            case 3: out.x4 += sign * coeff; break;
        }
        first = false;
        if (!sc.done() && sc.text[sc.pos] != '+' && sc.text[sc.pos] != '-') {
            throw ParseError("unexpected character in bicomplex literal", sc.pos);
        }
    }
    return out;
}

Bicomplex embed_bicomplex(const ProfileCurve& profile, double s, double t) {
    const double x = profile.x(s).f;
    const double y = profile.y(s).f;
    const double ct = std::cos(t);
    const double st = std::sin(t);
    return Bicomplex{x * ct, x * st, y * ct, y * st};
}

SurfaceGroupMap surface_group_map(const ProfileCurve& profile) {
    return [profile](double s, double t) { return embed_bicomplex(profile, s, t); };
}

namespace {

std::string describe_point(double s, double t, const char* what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "evaluation failed at (s=%.17g, t=%.17g): %s", s, t, what);
    return buf;
}

}  // namespace

GroupCheckReport group_axiom_check(const SurfaceGroupMap& map,
                                   const std::vector<double>& s_samples,
                                   const std::vector<double>& t_samples) {
    if (s_samples.empty() || t_samples.empty()) {
        throw ConfigError("group check needs at least one s and one t sample");
    }

    GroupCheckReport report;
    struct Point {
        double s, t;
        Bicomplex value;
    };
    std::vector<Point> points;
    points.reserve(s_samples.size() * t_samples.size());
    auto note_scale = [&report](const Bicomplex& v) {
        report.scale = std::max(report.scale, max_component(v));
    };
    for (double s : s_samples) {
        for (double t : t_samples) {
            try {
                Point p{s, t, map(s, t)};
                note_scale(p.value);
                points.push_back(p);
            } catch (const std::exception& e) {
                report.errors.push_back(describe_point(s, t, e.what()));
            }
        }
    }

    const Bicomplex one = bc_identity();
    try {
        report.identity_residual = bc_norm(bc_sub(map(0.0, 0.0), one));
    } catch (const std::exception& e) {
        report.errors.push_back(describe_point(0.0, 0.0, e.what()));
        report.identity_residual = std::numeric_limits<double>::infinity();
    }

    for (const Point& p : points) {
        try {
            const Bicomplex inv_point = map(-p.s, -p.t);
            note_scale(inv_point);
            const double r = bc_norm(bc_sub(bc_mul(p.value, inv_point), one));
            report.inverse_residual = std::max(report.inverse_residual, r);
        } catch (const std::exception& e) {
            report.errors.push_back(describe_point(-p.s, -p.t, e.what()));
        }
    }

    for (const Point& p : points) {
        for (const Point& q : points) {
            try {
                const Bicomplex sum_point = map(p.s + q.s, p.t + q.t);
                note_scale(sum_point);
                const double r = bc_norm(bc_sub(bc_mul(p.value, q.value), sum_point));
                report.closure_residual = std::max(report.closure_residual, r);
                ++report.pairs;
            } catch (const std::exception& e) {
                report.errors.push_back(describe_point(p.s + q.s, p.t + q.t, e.what()));
            }
        }
    }

    const double tol = 1e-10 * std::max(1.0, report.scale);
    report.closure_pass = report.closure_residual <= tol;
    report.inverse_pass = report.inverse_residual <= tol;
    report.identity_pass = report.identity_residual <= tol;
    report.pass = report.closure_pass && report.inverse_pass && report.identity_pass &&
                  report.errors.empty();
    return report;
}

PolarProfile polar_form(const ProfileCurve& profile) {
    PolarProfile polar;
    polar.label = profile.label;
    const auto fx = profile.x;
    const auto fy = profile.y;
    polar.u = [fx, fy](double s) {
        return std::hypot(fx(s).f, fy(s).f);
    };
    polar.theta = [fx, fy](double s) {
        const double x = fx(s).f;
        const double y = fy(s).f;
        if (x == 0.0 && y == 0.0) throw DomainError("polar angle undefined at the origin");
        return std::atan2(y, x);
    };
    return polar;
}

SubgroupVerdict lie_subgroup_verdict(const PolarProfile& profile,
                                     const std::vector<double>& s_samples) {
    if (!profile.u || !profile.theta) throw ConfigError("polar profile needs u and theta");
    if (s_samples.size() < 2) throw ConfigError("subgroup verdict needs at least two s samples");

    SubgroupVerdict verdict;
    double u_scale = 1.0;
    double u_dev_from_one = 0.0;
    for (double s1 : s_samples) {
        const double u1 = profile.u(s1);
        u_scale = std::max(u_scale, std::fabs(u1));
        u_dev_from_one = std::max(u_dev_from_one, std::fabs(u1 - 1.0));
        for (double s2 : s_samples) {
            const double u2 = profile.u(s2);
            const double u_sum = profile.u(s1 + s2);
            u_scale = std::max(u_scale, std::max(std::fabs(u2), std::fabs(u_sum)));
            verdict.u_residual = std::max(verdict.u_residual, std::fabs(u_sum - u1 * u2));

            // theta only matters modulo a full turn, so test additivity of
            // the angle wrapped into (-pi, pi].
            const double dt = profile.theta(s1 + s2) - profile.theta(s1) - profile.theta(s2);
            verdict.theta_residual = std::max(verdict.theta_residual,
                                              std::fabs(std::remainder(dt, 2.0 * kPi)));
        }
    }

    const double tol = 1e-10 * std::max(1.0, u_scale);
    verdict.u_multiplicative = verdict.u_residual <= tol;
    verdict.theta_linear = verdict.theta_residual <= 1e-10;
    verdict.pass = verdict.u_multiplicative && verdict.theta_linear;
    if (!verdict.u_multiplicative) {
        verdict.rule = "radial factor u is not multiplicative: u(s1+s2) != u(s1)u(s2)";
    } else if (!verdict.theta_linear) {
        verdict.rule = "angular factor theta is not additive through theta(0) = 0";
    } else if (u_dev_from_one <= tol) {
        verdict.rule = "u = 1 with additive theta: unit circle profile, surface closes under the product";
    } else {
        verdict.rule = "u multiplicative and theta additive: exponential spiral profile, surface closes under the product";
    }
    return verdict;
}

}  // namespace rot4
