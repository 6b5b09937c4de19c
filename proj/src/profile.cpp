#include "rot4/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <vector>

#include "rot4/errors.hpp"
#include "rot4/exterior.hpp"

namespace rot4 {

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

const double* find_param(const std::map<std::string, double>& params, const char* key) {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
}

double require_param(const std::map<std::string, double>& params, const char* key,
                     const char* family) {
    const double* v = find_param(params, key);
    if (!v) throw FamilyError(std::string(family) + " requires parameter '" + key + "'");
    return *v;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed, const char* family) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool known = false;
        for (const char* a : allowed)
            if (key == a) { known = true; break; }
        if (!known)
            throw FamilyError("unknown parameter '" + key + "' for " + family);
    }
}

} // namespace

ProfileCurve make_family(Family fam, const std::map<std::string, double>& params) {
    ProfileCurve pc;
    switch (fam) {
    case Family::Circle: {
        reject_unknown(params, {"lambda", "b0", "d"}, "circle");
        double lambda = require_param(params, "lambda", "circle");
        if (lambda == 0.0) throw FamilyError("circle requires lambda != 0");
        const double* b0p = find_param(params, "b0");
        double b0 = b0p ? *b0p : 1.0 / lambda;
        if (b0 == 0.0) throw FamilyError("circle requires b0 != 0 (degenerate profile)");
        const double* dp = find_param(params, "d");
        double d = dp ? *dp : 0.0;
        pc.x = [lambda, b0, d](double s) {
            return lambda * cos(Jet3{b0 * s + d, b0, 0.0, 0.0});
        };
        pc.y = [lambda, b0, d](double s) {
            return lambda * sin(Jet3{b0 * s + d, b0, 0.0, 0.0});
        };
        pc.unit_speed = std::abs(lambda * lambda * b0 * b0 - 1.0) <= 1e-12;
        pc.preferred_s = {0.0, 2.0 * kPi / std::abs(b0)};
        pc.label = "circle(lambda=" + fmt_num(lambda) + ",b0=" + fmt_num(b0) +
                   ",d=" + fmt_num(d) + ")";
        pc.params = {{"lambda", lambda}, {"b0", b0}, {"d", d}};
        return pc;
    }
    case Family::LogSpiral: {
        reject_unknown(params, {"mu", "s0"}, "logspiral");
        double mu = require_param(params, "mu", "logspiral");
        const double* s0p = find_param(params, "s0");
        double s0 = s0p ? *s0p : 1.0;
        double lambda = 1.0 / std::sqrt(1.0 + mu * mu);
        pc.x = [lambda, mu, s0](double s) {
            Jet3 tau = Jet3::variable(s) + s0;
            if (!(tau.f > 0.0)) throw DomainError("logspiral requires s + s0 > 0");
            return lambda * (tau * cos(mu * log(tau)));
        };
        pc.y = [lambda, mu, s0](double s) {
            Jet3 tau = Jet3::variable(s) + s0;
            if (!(tau.f > 0.0)) throw DomainError("logspiral requires s + s0 > 0");
            return lambda * (tau * sin(mu * log(tau)));
        };
        pc.domain = {-s0, 1e300, true, false};
        double lo = std::max(0.5, -s0 + 0.5);
        pc.preferred_s = {lo, lo + 2.0};
        pc.unit_speed = true;
        pc.label = "logspiral(mu=" + fmt_num(mu) + ",s0=" + fmt_num(s0) + ")";
        pc.params = {{"mu", mu}, {"s0", s0}};
        return pc;
    }
    case Family::Line: {
        reject_unknown(params, {"p", "q", "u", "v"}, "line");
        double p = require_param(params, "p", "line");
        double q = require_param(params, "q", "line");
        double u = require_param(params, "u", "line");
        double v = require_param(params, "v", "line");
        if (std::abs(u * u + v * v - 1.0) > 1e-9)
            throw FamilyError("line requires a unit direction, u^2 + v^2 = 1");
        pc.x = [p, u](double s) { return Jet3{p + u * s, u, 0.0, 0.0}; };
        pc.y = [q, v](double s) { return Jet3{q + v * s, v, 0.0, 0.0}; };
        pc.unit_speed = true;
        // Window past the closest approach to the rotation axis, where the
        // radius x^2 + y^2 can vanish.
        double s_axis = -(p * u + q * v);
        pc.preferred_s = {s_axis + 0.5, s_axis + 2.5};
        pc.label = "line(p=" + fmt_num(p) + ",q=" + fmt_num(q) + ",u=" + fmt_num(u) +
                   ",v=" + fmt_num(v) + ")";
        pc.params = {{"p", p}, {"q", q}, {"u", u}, {"v", v}};
        return pc;
    }
    case Family::Vranceanu: {
        reject_unknown(params, {"k"}, "vranceanu");
        double k = require_param(params, "k", "vranceanu");
        pc.x = [k](double s) {
            Jet3 sv = Jet3::variable(s);
            return exp(k * sv) * cos(sv);
        };
        pc.y = [k](double s) {
            Jet3 sv = Jet3::variable(s);
            return exp(k * sv) * sin(sv);
        };
        pc.unit_speed = false; // speed is sqrt(1+k^2) e^{ks}
        pc.preferred_s = {-1.5, 1.5};
        pc.label = "vranceanu(k=" + fmt_num(k) + ")";
        pc.params = {{"k", k}};
        return pc;
    }
    }
    throw FamilyError("unknown family");
}

namespace {

double speed_at(const ProfileCurve& curve, double s) {
    Jet3 x = curve.x(s), y = curve.y(s);
    return std::sqrt(x.d1 * x.d1 + y.d1 * y.d1);
}

// Adaptive Simpson for the arclength integrand.
double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 28);
}

// Cumulative arclength table over [lo, hi] plus an accurate inverter.
struct ArclenMap {
    ProfileCurve raw;
    double lo = 0.0;
    double hi = 0.0;
    double total = 0.0;
    std::vector<double> node_s;     // panel boundaries in the raw parameter
    std::vector<double> node_sigma; // arclength at those boundaries

    static constexpr int kPanels = 256;

    void build() {
        std::function<double(double)> v = [this](double s) { return speed_at(raw, s); };
        node_s.resize(kPanels + 1);
        node_sigma.resize(kPanels + 1);
        double width = (hi - lo) / kPanels;
        node_s[0] = lo;
        node_sigma[0] = 0.0;
        for (int i = 0; i < kPanels; ++i) {
            double a = lo + i * width;
            double b = (i + 1 == kPanels) ? hi : lo + (i + 1) * width;
            if (v(a) <= 1e-9 || v(b) <= 1e-9)
                throw ReparamError("profile speed degenerates near s=" + std::to_string(a));
            double seg = adaptive_simpson(v, a, b, 1e-14 * std::max(1.0, hi - lo));
            node_s[i + 1] = b;
            node_sigma[i + 1] = node_sigma[i] + seg;
        }
        total = node_sigma[kPanels];
        if (!(total > 0.0)) throw ReparamError("profile has zero arclength on the range");
    }

    // Solves sigma(s) = target by Newton on the per-panel residual with a
    // bisection bracket as safeguard.
    double invert(double target) const {
        target = std::clamp(target, 0.0, total);
        auto it = std::upper_bound(node_sigma.begin(), node_sigma.end(), target);
        std::size_t i = std::min<std::size_t>(
            node_sigma.size() - 2,
            static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                0, std::distance(node_sigma.begin(), it) - 1)));
        double a = node_s[i], b = node_s[i + 1];
        double want = target - node_sigma[i]; // arclength past node_s[i]
        std::function<double(double)> v = [this](double s) { return speed_at(raw, s); };
        double s = a + (b - a) * (node_sigma[i + 1] > node_sigma[i]
                                      ? want / (node_sigma[i + 1] - node_sigma[i])
                                      : 0.5);
        double brack_lo = a, brack_hi = b;
        double tol = 1e-13 * std::max(1.0, total);
        for (int iter = 0; iter < 80; ++iter) {
            double F = adaptive_simpson(v, a, s, 1e-15) - want;
            if (std::abs(F) <= tol) break;
            if (F > 0.0) brack_hi = s; else brack_lo = s;
            double step = F / v(s);
            double next = s - step;
            if (!(next > brack_lo) || !(next < brack_hi)) next = 0.5 * (brack_lo + brack_hi);
            if (next == s) break;
            s = next;
        }
        return s;
    }

    // Jets of the inverse map s(sigma): ds/dsigma and higher from the speed jets.
    Jet3 inverse_jet(double sigma) const {
        double s = invert(sigma);
        Jet3 x = raw.x(s), y = raw.y(s);
        double u0 = x.d1 * x.d1 + y.d1 * y.d1;
        double u1 = 2.0 * (x.d1 * x.d2 + y.d1 * y.d2);
        double u2 = 2.0 * (x.d2 * x.d2 + x.d1 * x.d3 + y.d2 * y.d2 + y.d1 * y.d3);
        double v0 = std::sqrt(u0);
        if (!(v0 > 1e-9)) throw ReparamError("speed degenerates at s=" + std::to_string(s));
        double v1 = u1 / (2.0 * v0);
        double v2 = (0.5 * u2 - v1 * v1) / v0;
        Jet3 inv;
        inv.f = s;
        inv.d1 = 1.0 / v0;
        inv.d2 = -v1 / (v0 * v0 * v0);
        inv.d3 = (3.0 * v1 * v1 - v0 * v2) / (v0 * v0 * v0 * v0 * v0);
        return inv;
    }
};

} // namespace

ProfileCurve arclength_reparametrize(const ProfileCurve& raw, Interval s_range) {
    if (!(s_range.hi > s_range.lo))
        throw ReparamError("reparametrization range is empty");
    auto map = std::make_shared<ArclenMap>();
    map->raw = raw;
    map->lo = s_range.lo;
    map->hi = s_range.hi;
    map->build();

    ProfileCurve out;
    out.x = [map](double sigma) {
        Jet3 inner = map->inverse_jet(sigma);
        return compose(map->raw.x(inner.f), inner);
    };
    out.y = [map](double sigma) {
        Jet3 inner = map->inverse_jet(sigma);
        return compose(map->raw.y(inner.f), inner);
    };
    out.domain = {0.0, map->total, false, false};
    out.preferred_s = out.domain;
    out.unit_speed = true;
    out.label = raw.label + " by arclength";
    out.params = raw.params;
    return out;
}

ProfileCurve arclength_reparametrize(const ProfileCurve& raw) {
    return arclength_reparametrize(raw, raw.preferred_s);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number_all(const std::string& text, std::size_t err_offset) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("expected a number, got '" + text + "'", err_offset);
    return v;
}

Family family_by_name(const std::string& name, std::size_t err_offset) {
    if (name == "circle") return Family::Circle;
    if (name == "logspiral") return Family::LogSpiral;
    if (name == "line") return Family::Line;
    if (name == "vranceanu") return Family::Vranceanu;
    throw ParseError("unknown profile family '" + name + "'", err_offset);
}

// name(p1=v1,p2=v2,...) or a bare name.
ProfileCurve parse_family_spec(const std::string& body, std::size_t base_offset) {
    std::size_t open = body.find('(');
    std::string name = trim(open == std::string::npos ? body : body.substr(0, open));
    Family fam = family_by_name(name, base_offset);
    std::map<std::string, double> params;
    if (open != std::string::npos) {
        if (body.back() != ')')
            throw ParseError("missing ')' in family parameters", base_offset + body.size());
        std::string inner = body.substr(open + 1, body.size() - open - 2);
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            std::size_t comma = inner.find(',', pos);
            std::string item = inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            std::string entry = trim(item);
            if (!entry.empty()) {
                std::size_t eq = entry.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected name=value in family parameters",
                                     base_offset + open + 1 + pos);
                std::string key = trim(entry.substr(0, eq));
                std::string val = trim(entry.substr(eq + 1));
                if (key.empty())
                    throw ParseError("empty parameter name", base_offset + open + 1 + pos);
                params[key] = parse_number_all(val, base_offset + open + 1 + pos + eq + 1);
            } else if (comma != std::string::npos) {
                throw ParseError("empty family parameter entry", base_offset + open + 1 + pos);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return make_family(fam, params);
}

// expr:x=<expr>;y=<expr>;s=<lo>:<hi>
ProfileCurve parse_expr_spec(const std::string& body, std::size_t base_offset) {
    std::string x_text, y_text, s_text;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t semi = body.find(';', pos);
        std::string part = body.substr(pos, semi == std::string::npos ? std::string::npos
                                                                      : semi - pos);
        std::string entry = trim(part);
        if (!entry.empty()) {
            std::size_t eq = entry.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected x=, y= or s= in expression profile",
                                 base_offset + pos);
            std::string key = trim(entry.substr(0, eq));
            std::string val = trim(entry.substr(eq + 1));
            if (key == "x") x_text = val;
            else if (key == "y") y_text = val;
            else if (key == "s") s_text = val;
            else
                throw ParseError("unknown expression profile field '" + key + "'",
                                 base_offset + pos);
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (x_text.empty()) throw ParseError("expression profile is missing x=", base_offset);
    if (y_text.empty()) throw ParseError("expression profile is missing y=", base_offset);
    if (s_text.empty()) throw ParseError("expression profile is missing s=lo:hi", base_offset);

    std::size_t colon = s_text.find(':');
    if (colon == std::string::npos)
        throw ParseError("expression profile range must be s=lo:hi", base_offset);
    double lo = parse_number_all(trim(s_text.substr(0, colon)), base_offset);
    double hi = parse_number_all(trim(s_text.substr(colon + 1)), base_offset);
    if (!(hi > lo)) throw ParseError("expression profile range is empty", base_offset);

    // shared_ptr so both component closures can own the ASTs
    std::shared_ptr<ExprNode> x_ast(parse_expr(x_text).release());
    std::shared_ptr<ExprNode> y_ast(parse_expr(y_text).release());

    ProfileCurve pc;
    pc.x = [x_ast](double s) { return eval_jet(*x_ast, s); };
    pc.y = [y_ast](double s) { return eval_jet(*y_ast, s); };
    pc.domain = {lo, hi, false, false};
    pc.preferred_s = pc.domain;
    pc.label = "expr:x=" + x_text + ";y=" + y_text;

    // Probe interior points to decide the unit-speed flag.
    bool unit = true;
    const int n = 200;
    for (int i = 1; i <= n && unit; ++i) {
        double s = lo + (hi - lo) * i / (n + 1.0);
        Jet3 xs = pc.x(s), ys = pc.y(s);
        if (std::abs(xs.d1 * xs.d1 + ys.d1 * ys.d1 - 1.0) > 1e-8) unit = false;
    }
    pc.unit_speed = unit;
    return pc;
}

} // namespace

ProfileCurve parse_profile_spec(const std::string& spec) {
    std::string text = trim(spec);
    if (text.empty()) throw ParseError("empty profile specification", 0);
    if (text == "clifford") {
        ProfileCurve pc = make_family(Family::Circle, {{"lambda", 1.0}, {"b0", 1.0}, {"d", 0.0}});
        pc.label = "clifford";
        return pc;
    }
    if (text.rfind("family:", 0) == 0) return parse_family_spec(trim(text.substr(7)), 7);
    if (text.rfind("expr:", 0) == 0) return parse_expr_spec(text.substr(5), 5);
    // Bare family shorthand, e.g. "circle(lambda=2)".
    return parse_family_spec(text, 0);
}

} // namespace rot4
