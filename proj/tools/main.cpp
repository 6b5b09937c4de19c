// rotsurf4: differential invariants, Gauss map classification, and group
// checks for rotational surfaces in E^4. Emits deterministic JSON or CSV.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "rot4/bicomplex.hpp"
#include "rot4/errors.hpp"
#include "rot4/exterior.hpp"
#include "rot4/numeric.hpp"
#include "rot4/pointwise.hpp"
#include "rot4/profile.hpp"
#include "rot4/report.hpp"
#include "rot4/surface.hpp"

namespace {

using namespace rot4;

// Atomic-counter worker pool. Results must be written to disjoint slots by
// index so the caller can assemble them in deterministic order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
    }
    if (n < 2 || threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (static_cast<std::size_t>(threads) > n) threads = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) throw ConfigError("grid must look like RxC, e.g. 32x32");
    int r = 0, c = 0;
    try {
        std::size_t used = 0;
        r = std::stoi(text.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument("");
        const std::string rest = text.substr(sep + 1);
        c = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("grid must look like RxC, e.g. 32x32");
    }
    if (r < 2 || c < 2) throw ConfigError("grid counts must be at least 2");
    return {r, c};
}

Interval parse_range(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos) throw ConfigError("range must look like lo:hi");
    char* end = nullptr;
    const std::string lo_text = text.substr(0, sep);
    const std::string hi_text = text.substr(sep + 1);
    const double lo = std::strtod(lo_text.c_str(), &end);
    if (end != lo_text.c_str() + lo_text.size() || lo_text.empty()) {
        throw ConfigError("range must look like lo:hi");
    }
    const double hi = std::strtod(hi_text.c_str(), &end);
    if (end != hi_text.c_str() + hi_text.size() || hi_text.empty()) {
        throw ConfigError("range must look like lo:hi");
    }
    if (!(hi > lo)) throw ConfigError("range must have hi > lo");
    return Interval{lo, hi};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

// Grid positions pulled in from the range ends so finite-difference stencils
// of width `h` stay inside the evaluation domain.
std::vector<double> linspace_inset(Interval range, int n, double h) {
    const double inset = 1.5 * h;
    const double lo = range.lo + inset;
    const double hi = range.hi - inset;
    if (!(hi > lo)) throw ConfigError("range too small for the finite-difference step");
    return linspace(lo, hi, n);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw ConfigError("cannot open output file: " + path);
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
}

struct CommonOpts {
    std::string profile;
    std::string grid = "16x16";
    std::string s_range;
    std::string t_range;
    double step = 1e-3;
    std::string out;
    std::string format = "json";
    bool reparametrize = false;
    unsigned threads = 0;
};

ProfileCurve resolve_profile(const std::string& spec, bool reparametrize) {
    ProfileCurve p = parse_profile_spec(spec);
    if (reparametrize && !p.unit_speed) p = arclength_reparametrize(p);
    return p;
}

JsonValue range_json(Interval r) {
    JsonValue arr = json_array();
    arr.push(json_number(r.lo));
    arr.push(json_number(r.hi));
    return arr;
}

JsonValue bivector_json(const Bivector4& b) {
    JsonValue arr = json_array();
    for (int k = 0; k < 6; ++k) arr.push(json_number(b.c[static_cast<std::size_t>(k)]));
    return arr;
}

JsonValue config_json(const CommonOpts& opts, const ProfileCurve& profile, Interval s_range,
                      Interval t_range, int ns, int nt) {
    JsonValue cfg = json_object();
    cfg.set("profile", json_string(opts.profile));
    cfg.set("label", json_string(profile.label));
    cfg.set("unit_speed", json_bool(profile.unit_speed));
    cfg.set("reparametrized", json_bool(opts.reparametrize && profile.unit_speed));
    JsonValue grid = json_object();
    grid.set("s_count", json_int(ns));
    grid.set("t_count", json_int(nt));
    cfg.set("grid", grid);
    cfg.set("s_range", range_json(s_range));
    cfg.set("t_range", range_json(t_range));
    cfg.set("step", json_number(opts.step));
    return cfg;
}

JsonValue report_header(const char* command) {
    JsonValue doc = json_object();
    doc.set("schema", json_string(kReportSchema));
    doc.set("tool_version", json_string(kToolVersion));
    doc.set("command", json_string(command));
    return doc;
}

std::string csv_number(double v) { return format_double(v); }

// ---------------------------------------------------------------- analyze

struct AnalyzePoint {
    double s = 0.0, t = 0.0;
    bool closed_ok = false;
    double a = 0.0, b = 0.0, c = 0.0;
    double k_closed = 0.0;
    double gauss_residual = 0.0, codazzi_residual = 0.0;
    Bivector4 lap_closed;
    double lap_discrepancy = 0.0;
    double k_numeric = 0.0;
    Bivector4 lap_numeric;
    double hyperquadric_residual = 0.0;
    double frame_gram = 0.0;
};

int cmd_analyze(const CommonOpts& opts) {
    const ProfileCurve profile = resolve_profile(opts.profile, opts.reparametrize);
    const auto [ns, nt] = parse_grid(opts.grid);
    const Interval s_range = opts.s_range.empty() ? profile.preferred_s : parse_range(opts.s_range);
    const Interval t_range = opts.t_range.empty() ? Interval{0.0, 2.0 * kPi} : parse_range(opts.t_range);
    const double h = opts.step;
    if (!(h > 0.0)) throw ConfigError("step must be positive");

    const bool closed_ok = profile.unit_speed;
    std::optional<RotationSurface> surf;
    if (closed_ok) surf = make_surface(profile, s_range, t_range);
    const ImmersionMap map = closed_ok ? rotation_map(*surf)
                                       : profile_rotation_map(profile, s_range, t_range);

    const std::vector<double> ss = linspace_inset(s_range, ns, h);
    const std::vector<double> ts = linspace_inset(t_range, nt, h);
    std::vector<AnalyzePoint> points(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));

    parallel_for(points.size(), opts.threads, [&](std::size_t idx) {
        AnalyzePoint& pt = points[idx];
        pt.s = ss[idx / static_cast<std::size_t>(nt)];
        pt.t = ts[idx % static_cast<std::size_t>(nt)];
        pt.closed_ok = closed_ok;

        const ImmersionSample sample = numeric_jets(map, pt.s, pt.t, h);
        const Frame frame = gram_schmidt_frame(sample);
        pt.k_numeric = gaussian_curvature_numeric(sample, frame);
        pt.frame_gram = frame_gram_deviation(frame);
        pt.lap_numeric = laplacian_numeric(map, pt.s, pt.t, h);
        const Vec4& pos = sample.position;
        pt.hyperquadric_residual = std::fabs(pos.v[0] * pos.v[3] - pos.v[1] * pos.v[2]);

        if (closed_ok) {
            const InvariantTriple inv = invariants(*surf, pt.s);
            pt.a = inv.a;
            pt.b = inv.b;
            pt.c = inv.c;
            pt.k_closed = gaussian_curvature(*surf, pt.s);
            const auto gc = gauss_codazzi_residual(*surf, pt.s);
            pt.gauss_residual = gc.first;
            pt.codazzi_residual = gc.second;
            const Frame cf = closed_frame(*surf, pt.s, pt.t);
            pt.lap_closed = frame_biv_to_fixed(laplacian_gauss_closed(*surf, pt.s), cf);
            pt.lap_discrepancy = biv_norm(pt.lap_numeric - pt.lap_closed);
        }
    });

    double max_k_closed = 0, max_k_numeric = 0, max_gauss = 0, max_codazzi = 0;
    double max_lap = 0, max_hyper = 0, max_gram = 0;
    for (const AnalyzePoint& pt : points) {
        max_k_numeric = std::max(max_k_numeric, std::fabs(pt.k_numeric));
        max_hyper = std::max(max_hyper, pt.hyperquadric_residual);
        max_gram = std::max(max_gram, pt.frame_gram);
        if (pt.closed_ok) {
            max_k_closed = std::max(max_k_closed, std::fabs(pt.k_closed));
            max_gauss = std::max(max_gauss, pt.gauss_residual);
            max_codazzi = std::max(max_codazzi, pt.codazzi_residual);
            max_lap = std::max(max_lap, pt.lap_discrepancy);
        }
    }

    if (opts.format == "csv") {
        std::string out =
            "s,t,a,b,c,K_closed,K_numeric,gauss_residual,codazzi_residual,"
            "laplacian_discrepancy,hyperquadric_residual\n";
        for (const AnalyzePoint& pt : points) {
            out += csv_number(pt.s) + ',' + csv_number(pt.t) + ',';
            if (pt.closed_ok) {
                out += csv_number(pt.a) + ',' + csv_number(pt.b) + ',' + csv_number(pt.c) + ',' +
                       csv_number(pt.k_closed) + ',';
            } else {
                out += ",,,,";
            }
            out += csv_number(pt.k_numeric) + ',';
            if (pt.closed_ok) {
                out += csv_number(pt.gauss_residual) + ',' + csv_number(pt.codazzi_residual) + ',' +
                       csv_number(pt.lap_discrepancy) + ',';
            } else {
                out += ",,,";
            }
            out += csv_number(pt.hyperquadric_residual) + '\n';
        }
        write_output(opts.out, out);
        return 0;
    }

    JsonValue doc = report_header("analyze");
    doc.set("config", config_json(opts, profile, s_range, t_range, ns, nt));
    JsonValue arr = json_array();
    for (const AnalyzePoint& pt : points) {
        JsonValue rec = json_object();
        rec.set("s", json_number(pt.s));
        rec.set("t", json_number(pt.t));
        if (pt.closed_ok) {
            rec.set("a", json_number(pt.a));
            rec.set("b", json_number(pt.b));
            rec.set("c", json_number(pt.c));
            rec.set("K_closed", json_number(pt.k_closed));
        }
        rec.set("K_numeric", json_number(pt.k_numeric));
        if (pt.closed_ok) {
            rec.set("gauss_residual", json_number(pt.gauss_residual));
            rec.set("codazzi_residual", json_number(pt.codazzi_residual));
            rec.set("laplacian_closed", bivector_json(pt.lap_closed));
        }
        rec.set("laplacian_numeric", bivector_json(pt.lap_numeric));
        if (pt.closed_ok) rec.set("laplacian_discrepancy", json_number(pt.lap_discrepancy));
        rec.set("hyperquadric_residual", json_number(pt.hyperquadric_residual));
        rec.set("frame_gram_deviation", json_number(pt.frame_gram));
        arr.push(std::move(rec));
    }
    doc.set("points", std::move(arr));
    JsonValue summary = json_object();
    summary.set("closed_form_available", json_bool(closed_ok));
    if (closed_ok) {
        summary.set("max_abs_K_closed", json_number(max_k_closed));
        summary.set("max_gauss_residual", json_number(max_gauss));
        summary.set("max_codazzi_residual", json_number(max_codazzi));
        summary.set("max_laplacian_discrepancy", json_number(max_lap));
    }
    summary.set("max_abs_K_numeric", json_number(max_k_numeric));
    summary.set("max_hyperquadric_residual", json_number(max_hyper));
    summary.set("max_frame_gram_deviation", json_number(max_gram));
    doc.set("summary", std::move(summary));
    write_output(opts.out, to_json(doc) + "\n");
    return 0;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const CommonOpts& opts, const std::string& source_name, const Thresholds& th) {
    const ProfileCurve profile = resolve_profile(opts.profile, opts.reparametrize);
    const auto [ns, nt] = parse_grid(opts.grid);
    const Interval s_range = opts.s_range.empty() ? profile.preferred_s : parse_range(opts.s_range);
    const Interval t_range = opts.t_range.empty() ? Interval{0.0, 2.0 * kPi} : parse_range(opts.t_range);
    if (!(opts.step > 0.0)) throw ConfigError("step must be positive");

    LaplacianSource source;
    if (source_name == "numeric") {
        source = LaplacianSource::Numeric;
    } else if (source_name == "closed") {
        source = LaplacianSource::Closed;
    } else {
        throw ConfigError("source must be numeric or closed");
    }

    const RotationSurface surf = make_surface(profile, s_range, t_range);

    double max_abs_k = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double s = s_range.lo + (s_range.hi - s_range.lo) * (i + 0.5) / 200.0;
        max_abs_k = std::max(max_abs_k, std::fabs(gaussian_curvature(surf, s)));
    }
    const bool flat = max_abs_k <= 1e-8;

    const std::vector<GaussSample> samples = build_gauss_samples(surf, ns, nt, opts.step, source);
    PointwiseFit fit;
    std::optional<FlatClassification> flat_check;
    if (flat) {
        flat_check = classify_flat_surface(surf, ns, nt, opts.step, th, source);
        fit = flat_check->fit;
    } else {
        fit = second_kind_fit(samples, th);
    }
    const FitDiagnostics diag = fit_diagnostics(surf, samples, fit);

    if (opts.format == "csv") {
        std::string out = "id,s,t,f\n";
        std::vector<double> f_by_id(samples.size(), std::nan(""));
        for (std::size_t k = 0; k < fit.fitted_ids.size(); ++k) {
            f_by_id[static_cast<std::size_t>(fit.fitted_ids[k])] = fit.f_samples[k];
        }
        for (const GaussSample& smp : samples) {
            out += std::to_string(smp.id) + ',' + csv_number(smp.s) + ',' + csv_number(smp.t) + ',';
            const double f = f_by_id[static_cast<std::size_t>(smp.id)];
            if (std::isfinite(f)) out += csv_number(f);
            out += '\n';
        }
        write_output(opts.out, out);
        return 0;
    }

    JsonValue doc = report_header("classify");
    JsonValue cfg = config_json(opts, profile, s_range, t_range, ns, nt);
    cfg.set("laplacian_source", json_string(source_name));
    doc.set("config", std::move(cfg));

    JsonValue cls = json_object();
    cls.set("kind", json_string(to_label(fit.kind)));
    double f_min = 0, f_max = 0, f_mean = 0;
    if (!fit.f_samples.empty()) {
        f_min = f_max = fit.f_samples.front();
        for (double f : fit.f_samples) {
            f_min = std::min(f_min, f);
            f_max = std::max(f_max, f);
            f_mean += f;
        }
        f_mean /= static_cast<double>(fit.f_samples.size());
    }
    cls.set("f_min", json_number(f_min));
    cls.set("f_max", json_number(f_max));
    cls.set("f_mean", json_number(f_mean));
    cls.set("C", bivector_json(fit.C));
    cls.set("norm_C", json_number(biv_norm(fit.C)));
    cls.set("residual", json_number(fit.residual));
    cls.set("iterations", json_int(fit.iterations));
    cls.set("converged", json_bool(fit.converged));
    cls.set("harmonic_points", json_int(fit.harmonic_points));
    cls.set("samples", json_int(static_cast<long long>(samples.size())));
    if (!fit.note.empty()) cls.set("note", json_string(fit.note));
    JsonValue fs = json_array();
    for (double f : fit.f_samples) fs.push(json_number(f));
    cls.set("f_samples", std::move(fs));
    doc.set("classification", std::move(cls));

    JsonValue flat_json = json_object();
    flat_json.set("applicable", json_bool(flat));
    flat_json.set("max_abs_K", json_number(flat ? flat_check->max_abs_k : max_abs_k));
    if (flat) {
        flat_json.set("profile_rule", json_string(flat_check->profile_rule));
        flat_json.set("profile_pointwise", json_bool(flat_check->profile_pointwise));
        flat_json.set("fit_pointwise", json_bool(flat_check->fit_pointwise));
        flat_json.set("agree", json_bool(flat_check->agree));
    }
    doc.set("flat_check", std::move(flat_json));

    JsonValue dj = json_object();
    dj.set("c14_max", json_number(diag.c14_max));
    dj.set("c23_max", json_number(diag.c23_max));
    dj.set("c34_max", json_number(diag.c34_max));
    dj.set("c13_plus_c24_max", json_number(diag.c13_plus_c24_max));
    dj.set("f_ode_checked", json_bool(diag.f_ode_checked));
    if (diag.f_ode_checked) dj.set("f_ode_max", json_number(diag.f_ode_max));
    doc.set("diagnostics", std::move(dj));

    write_output(opts.out, to_json(doc) + "\n");
    return 0;
}

// --------------------------------------------------------------- laplacian

int cmd_laplacian(const CommonOpts& opts) {
    const ProfileCurve profile = resolve_profile(opts.profile, opts.reparametrize);
    const auto [ns, nt] = parse_grid(opts.grid);
    const Interval s_range = opts.s_range.empty() ? profile.preferred_s : parse_range(opts.s_range);
    const Interval t_range = opts.t_range.empty() ? Interval{0.0, 2.0 * kPi} : parse_range(opts.t_range);
    const double h = opts.step;
    if (!(h > 0.0)) throw ConfigError("step must be positive");

    const RotationSurface surf = make_surface(profile, s_range, t_range);
    const ImmersionMap map = rotation_map(surf);
    const std::vector<double> ss = linspace_inset(s_range, ns, h);
    const std::vector<double> ts = linspace_inset(t_range, nt, h);

    struct Row {
        double s = 0.0, t = 0.0;
        Bivector4 closed, numeric;
        FrameBivector frame_coeffs;
        double discrepancy = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));
    parallel_for(rows.size(), opts.threads, [&](std::size_t idx) {
        Row& row = rows[idx];
        row.s = ss[idx / static_cast<std::size_t>(nt)];
        row.t = ts[idx % static_cast<std::size_t>(nt)];
        row.frame_coeffs = laplacian_gauss_closed(surf, row.s);
        row.closed = frame_biv_to_fixed(row.frame_coeffs, closed_frame(surf, row.s, row.t));
        row.numeric = laplacian_numeric(map, row.s, row.t, h);
        row.discrepancy = biv_norm(row.numeric - row.closed);
    });

    double max_disc = 0.0;
    for (const Row& row : rows) max_disc = std::max(max_disc, row.discrepancy);

    static const char* kSuffix[6] = {"12", "13", "14", "23", "24", "34"};
    if (opts.format == "csv") {
        std::string out = "s,t";
        for (const char* sfx : kSuffix) out += std::string(",closed_") + sfx;
        for (const char* sfx : kSuffix) out += std::string(",numeric_") + sfx;
        out += ",discrepancy\n";
        for (const Row& row : rows) {
            out += csv_number(row.s) + ',' + csv_number(row.t);
            for (int k = 0; k < 6; ++k) out += ',' + csv_number(row.closed.c[static_cast<std::size_t>(k)]);
            for (int k = 0; k < 6; ++k) out += ',' + csv_number(row.numeric.c[static_cast<std::size_t>(k)]);
            out += ',' + csv_number(row.discrepancy) + '\n';
        }
        write_output(opts.out, out);
        return 0;
    }

    JsonValue doc = report_header("laplacian");
    doc.set("config", config_json(opts, profile, s_range, t_range, ns, nt));
    JsonValue arr = json_array();
    for (const Row& row : rows) {
        JsonValue rec = json_object();
        rec.set("s", json_number(row.s));
        rec.set("t", json_number(row.t));
        JsonValue fc = json_array();
        for (int k = 0; k < 6; ++k) fc.push(json_number(row.frame_coeffs.c[static_cast<std::size_t>(k)]));
        rec.set("closed_frame_coeffs", std::move(fc));
        rec.set("closed", bivector_json(row.closed));
        rec.set("numeric", bivector_json(row.numeric));
        rec.set("discrepancy", json_number(row.discrepancy));
        arr.push(std::move(rec));
    }
    doc.set("points", std::move(arr));
    JsonValue summary = json_object();
    summary.set("max_discrepancy", json_number(max_disc));
    doc.set("summary", std::move(summary));
    write_output(opts.out, to_json(doc) + "\n");
    return 0;
}

// -------------------------------------------------------------- group-check

int cmd_group_check(const std::string& spec, const std::string& grid_text,
                    const std::string& s_text, const std::string& t_text, bool reparametrize,
                    const std::string& out_path, const std::string& format) {
    const ProfileCurve profile = resolve_profile(spec, reparametrize);
    const auto [ns, nt] = parse_grid(grid_text);
    const Interval s_range = s_text.empty() ? Interval{-0.75, 0.75} : parse_range(s_text);
    const Interval t_range = t_text.empty() ? Interval{-1.5, 1.5} : parse_range(t_text);
    const std::vector<double> ss = linspace(s_range.lo, s_range.hi, ns);
    const std::vector<double> ts = linspace(t_range.lo, t_range.hi, nt);

    const GroupCheckReport rep = group_axiom_check(surface_group_map(profile), ss, ts);

    std::optional<SubgroupVerdict> verdict;
    std::string verdict_error;
    try {
        verdict = lie_subgroup_verdict(polar_form(profile), ss);
    } catch (const Error& e) {
        verdict_error = e.what();
    }

    double max_hyper = 0.0;
    long long hyper_checked = 0;
    bool all_member = true;
    for (double s : ss) {
        for (double t : ts) {
            try {
                const Bicomplex x = embed_bicomplex(profile, s, t);
                max_hyper = std::max(max_hyper, std::fabs(x.x1 * x.x4 - x.x2 * x.x3));
                all_member = all_member && in_hyperquadric(x);
                ++hyper_checked;
            } catch (const Error&) {
                // out-of-domain points already appear in rep.errors
            }
        }
    }

    if (format == "csv") {
        std::string out =
            "closure_residual,inverse_residual,identity_residual,scale,pass,pairs\n";
        out += csv_number(rep.closure_residual) + ',' + csv_number(rep.inverse_residual) + ',' +
               csv_number(rep.identity_residual) + ',' + csv_number(rep.scale) + ',' +
               (rep.pass ? "true" : "false") + ',' + std::to_string(rep.pairs) + '\n';
        write_output(out_path, out);
        return 0;
    }

    JsonValue doc = report_header("group-check");
    JsonValue cfg = json_object();
    cfg.set("surface", json_string(spec));
    cfg.set("label", json_string(profile.label));
    cfg.set("reparametrized", json_bool(reparametrize && profile.unit_speed));
    JsonValue ssj = json_array();
    for (double s : ss) ssj.push(json_number(s));
    cfg.set("s_samples", std::move(ssj));
    JsonValue tsj = json_array();
    for (double t : ts) tsj.push(json_number(t));
    cfg.set("t_samples", std::move(tsj));
    doc.set("config", std::move(cfg));

    JsonValue gc = json_object();
    gc.set("closure_residual", json_number(rep.closure_residual));
    gc.set("inverse_residual", json_number(rep.inverse_residual));
    gc.set("identity_residual", json_number(rep.identity_residual));
    gc.set("scale", json_number(rep.scale));
    gc.set("closure_pass", json_bool(rep.closure_pass));
    gc.set("inverse_pass", json_bool(rep.inverse_pass));
    gc.set("identity_pass", json_bool(rep.identity_pass));
    gc.set("pass", json_bool(rep.pass));
    gc.set("pairs", json_int(static_cast<long long>(rep.pairs)));
    JsonValue errs = json_array();
    for (const std::string& e : rep.errors) errs.push(json_string(e));
    gc.set("errors", std::move(errs));
    doc.set("group_check", std::move(gc));

    JsonValue vj = json_object();
    if (verdict) {
        vj.set("pass", json_bool(verdict->pass));
        vj.set("u_multiplicative", json_bool(verdict->u_multiplicative));
        vj.set("theta_linear", json_bool(verdict->theta_linear));
        vj.set("u_residual", json_number(verdict->u_residual));
        vj.set("theta_residual", json_number(verdict->theta_residual));
        vj.set("rule", json_string(verdict->rule));
    } else {
        vj.set("error", json_string(verdict_error));
    }
    doc.set("subgroup_verdict", std::move(vj));
    if (verdict) {
        doc.set("agree", json_bool(verdict->pass == rep.pass));
    } else {
        doc.set("agree", json_null());
    }

    JsonValue hq = json_object();
    hq.set("checked", json_int(hyper_checked));
    hq.set("max_residual", json_number(max_hyper));
    hq.set("all_member", json_bool(all_member && hyper_checked > 0));
    doc.set("hyperquadric", std::move(hq));

    write_output(out_path, to_json(doc) + "\n");
    return 0;
}

// ---------------------------------------------------------------- bicomplex

int cmd_bicomplex(const std::string& op, const std::vector<std::string>& args) {
    if (op == "mul") {
        if (args.size() != 2) throw ConfigError("bicomplex mul needs exactly two literals");
        const Bicomplex r = bc_mul(parse_bicomplex(args[0]), parse_bicomplex(args[1]));
        std::printf("%s\n", format_bicomplex(r).c_str());
        return 0;
    }
    if (op == "inv") {
        if (args.size() != 1) throw ConfigError("bicomplex inv needs exactly one literal");
        const Bicomplex r = bc_inverse(parse_bicomplex(args[0]));
        std::printf("%s\n", format_bicomplex(r).c_str());
        return 0;
    }
    if (op == "conj") {
        if (args.size() != 2) throw ConfigError("bicomplex conj needs a literal and one of t1, t2, t3");
        Conjugation which;
        if (args[1] == "t1") which = Conjugation::T1;
        else if (args[1] == "t2") which = Conjugation::T2;
        else if (args[1] == "t3") which = Conjugation::T3;
        else throw ConfigError("conjugation must be t1, t2, or t3");
        std::printf("%s\n", format_bicomplex(conjugate(parse_bicomplex(args[0]), which)).c_str());
        return 0;
    }
    if (op == "matrix") {
        if (args.size() != 1) throw ConfigError("bicomplex matrix needs exactly one literal");
        const Mat4 g = to_matrix(parse_bicomplex(args[0]));
        for (int r = 0; r < 4; ++r) {
            std::printf("%s %s %s %s\n", format_double(g(r, 0)).c_str(), format_double(g(r, 1)).c_str(),
                        format_double(g(r, 2)).c_str(), format_double(g(r, 3)).c_str());
        }
        return 0;
    }
    throw ConfigError("bicomplex operation must be one of mul, inv, conj, matrix");
}

int run(int argc, char** argv) {
    CLI::App app{"differential invariants and Gauss map analysis of rotational surfaces in E^4"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOpts analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "invariant and curvature sweep over a grid");
    analyze->add_option("--profile", analyze_opts.profile, "profile spec")->required();
    analyze->add_option("--grid", analyze_opts.grid, "grid RxC (default 16x16)");
    analyze->add_option("--s", analyze_opts.s_range, "s range lo:hi");
    analyze->add_option("--t", analyze_opts.t_range, "t range lo:hi");
    analyze->add_option("--step", analyze_opts.step, "finite-difference step");
    analyze->add_option("--out", analyze_opts.out, "output path (default stdout)");
    analyze->add_option("--format", analyze_opts.format, "json or csv");
    analyze->add_flag("--reparametrize", analyze_opts.reparametrize, "arclength-reparametrize first");
    analyze->add_option("--threads", analyze_opts.threads, "worker threads (default: hardware)");

    CommonOpts classify_opts;
    std::string classify_source = "numeric";
    Thresholds classify_th;
    CLI::App* classify = app.add_subcommand("classify", "pointwise Gauss map classification");
    classify->add_option("--profile", classify_opts.profile, "profile spec")->required();
    classify->add_option("--grid", classify_opts.grid, "grid RxC (default 16x16)");
    classify->add_option("--s", classify_opts.s_range, "s range lo:hi");
    classify->add_option("--t", classify_opts.t_range, "t range lo:hi");
    classify->add_option("--step", classify_opts.step, "finite-difference step");
    classify->add_option("--out", classify_opts.out, "output path (default stdout)");
    classify->add_option("--format", classify_opts.format, "json or csv");
    classify->add_flag("--reparametrize", classify_opts.reparametrize, "arclength-reparametrize first");
    classify->add_option("--threads", classify_opts.threads, "worker threads (default: hardware)");
    classify->add_option("--source", classify_source, "Laplacian source: numeric or closed");
    classify->add_option("--fit-residual", classify_th.residual, "relative residual acceptance");
    classify->add_option("--c-zero", classify_th.c_zero, "norm below which C counts as zero");
    classify->add_option("--harmonic-tol", classify_th.harmonic, "norm below which dG counts as zero");

    CommonOpts lap_opts;
    CLI::App* laplacian = app.add_subcommand("laplacian", "closed-form vs numeric Laplacian table");
    laplacian->add_option("--profile", lap_opts.profile, "profile spec")->required();
    laplacian->add_option("--grid", lap_opts.grid, "grid RxC (default 16x16)");
    laplacian->add_option("--s", lap_opts.s_range, "s range lo:hi");
    laplacian->add_option("--t", lap_opts.t_range, "t range lo:hi");
    laplacian->add_option("--step", lap_opts.step, "finite-difference step");
    laplacian->add_option("--out", lap_opts.out, "output path (default stdout)");
    laplacian->add_option("--format", lap_opts.format, "json or csv");
    laplacian->add_flag("--reparametrize", lap_opts.reparametrize, "arclength-reparametrize first");
    laplacian->add_option("--threads", lap_opts.threads, "worker threads (default: hardware)");

    std::string gc_surface, gc_grid = "5x5", gc_s, gc_t, gc_out, gc_format = "json";
    bool gc_reparam = false;
    CLI::App* group_check = app.add_subcommand("group-check", "bicomplex group axioms on a surface");
    group_check->add_option("--surface", gc_surface, "profile spec")->required();
    group_check->add_option("--grid", gc_grid, "sample grid RxC (default 5x5)");
    group_check->add_option("--s", gc_s, "s sample range lo:hi (default -0.75:0.75)");
    group_check->add_option("--t", gc_t, "t sample range lo:hi (default -1.5:1.5)");
    group_check->add_option("--out", gc_out, "output path (default stdout)");
    group_check->add_option("--format", gc_format, "json or csv");
    group_check->add_flag("--reparametrize", gc_reparam, "arclength-reparametrize first");

    std::string bc_op;
    std::vector<std::string> bc_args;
    CLI::App* bicomplex = app.add_subcommand("bicomplex", "bicomplex calculator");
    bicomplex->add_option("op", bc_op, "mul, inv, conj, or matrix")->required();
    bicomplex->add_option("args", bc_args, "operands");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_opts);
    if (app.got_subcommand(classify)) return cmd_classify(classify_opts, classify_source, classify_th);
    if (app.got_subcommand(laplacian)) return cmd_laplacian(lap_opts);
    if (app.got_subcommand(group_check)) {
        return cmd_group_check(gc_surface, gc_grid, gc_s, gc_t, gc_reparam, gc_out, gc_format);
    }
    if (app.got_subcommand(bicomplex)) return cmd_bicomplex(bc_op, bc_args);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rot4::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rot4::FamilyError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rot4::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rot4::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rot4::DegenerateError& e) {
        std::fprintf(stderr, "degenerate: %s\n", e.what());
        return 3;
    } catch (const rot4::ZeroDivisorError& e) {
        std::fprintf(stderr, "degenerate: %s\n", e.what());
        return 3;
    } catch (const rot4::ReparamError& e) {
        std::fprintf(stderr, "degenerate: %s\n", e.what());
        return 3;
    } catch (const rot4::EvalError& e) {
        std::fprintf(stderr, "degenerate: %s\n", e.what());
        return 3;
    } catch (const rot4::FrameError& e) {
        std::fprintf(stderr, "degenerate: %s\n", e.what());
        return 3;
    } catch (const rot4::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
