#pragma once

// Gauss map classification: does Delta G = f (G + C) hold for a scalar
// field f and a constant bivector C? The fit is generic alternating least
// squares over sampled (G, Delta G) pairs; the flat-surface classifier adds
// the family-specific cross-check that the verdict matches the profile
// shape (flat circle profile or planar meridian).

#include <string>
#include <utility>
#include <vector>

#include "rot4/surface.hpp"

namespace rot4 {

struct GaussSample {
    int id = 0;
    double s = 0.0, t = 0.0;
    Bivector4 G;  // unit simple bivector
    Bivector4 dG; // Laplacian of the Gauss map at the point
};

/// Classification tolerances. residual is normalized,
/// sqrt(sum ||r_i||^2 / sum ||dG_i||^2).
struct Thresholds {
    double residual = 1e-3;  // fit acceptance
    double c_zero = 1e-4;    // ||C|| below this counts as C = 0
    double harmonic = 1e-6;  // ||dG|| below this counts as harmonic
    int max_iterations = 200;
    double change_tol = 1e-12;
};

enum class PointwiseKind { First, Second, Harmonic, None };

const char* to_label(PointwiseKind kind);

struct PointwiseFit {
    PointwiseKind kind = PointwiseKind::None;
    Bivector4 C;
    std::vector<double> f_samples; // one per fitted (non-harmonic) sample
    std::vector<int> fitted_ids;   // ids of those samples
    double residual = 0.0;
    int iterations = 0;
    int harmonic_points = 0; // excluded from the fit
    bool converged = true;
    std::string note;
};

/// Enforces the sample-set contract: finite, unit-norm G with simple-bivector
/// residual at most 1e-8. Throws FrameError.
void validate_samples(const std::vector<GaussSample>& samples);

/// True when dG_i is parallel to G_i at every sample (within
/// thresholds.residual, relative); harmonic points pass vacuously.
/// Second element: f_i = <dG_i, G_i> per sample.
std::pair<bool, std::vector<double>> first_kind_test(const std::vector<GaussSample>& samples,
                                                     const Thresholds& thresholds = {});

/// Alternating least squares for Delta G = f (G + C): given C the optimal
/// f_i is a projection, given {f_i} the optimal C is a closed-form average.
/// Starts at C = 0 with one multi-start retry aimed at second-kind data.
/// Non-convergence is reported in the result, not thrown.
PointwiseFit second_kind_fit(const std::vector<GaussSample>& samples,
                             const Thresholds& thresholds = {});

enum class LaplacianSource { Numeric, Closed };

/// Samples G (exact partials) and Delta G on an ns x nt interior grid,
/// inset so the difference stencil stays inside the surface ranges.
std::vector<GaussSample> build_gauss_samples(const RotationSurface& surf, int ns, int nt,
                                             double h, LaplacianSource source);

/// Residuals of the constant-vector relations that a pointwise 1-type Gauss
/// map forces on this family, evaluated against the fitted C and f:
/// the three frame components of C that must vanish, the antisymmetry
/// pairing, and the transport law f' = -2 a f along the meridian.
struct FitDiagnostics {
    double c14_max = 0.0;
    double c23_max = 0.0;
    double c34_max = 0.0;
    double c13_plus_c24_max = 0.0;
    double f_ode_max = 0.0;
    bool f_ode_checked = false;
};

FitDiagnostics fit_diagnostics(const RotationSurface& surf,
                               const std::vector<GaussSample>& samples,
                               const PointwiseFit& fit);

/// Verdict of the flat-surface classification: numeric fit on one side,
/// profile shape on the other.
struct FlatClassification {
    PointwiseFit fit;
    bool fit_pointwise = false;     // fit.kind != none
    bool profile_pointwise = false; // flat circle profile or planar meridian
    std::string profile_rule;
    bool agree = false;
    double max_abs_k = 0.0;
};

/// Requires a flat surface (max |K| <= 1e-8 over the s-range); throws
/// DomainError otherwise. Classifies by the ALS fit and cross-checks the
/// profile-shape criterion: pointwise 1-type exactly for a circle profile
/// with b0^2 lambda^2 = 1 or a planar meridian (b = c = 0).
FlatClassification classify_flat_surface(const RotationSurface& surf, int ns, int nt, double h,
                                         const Thresholds& thresholds = {},
                                         LaplacianSource source = LaplacianSource::Numeric);

} // namespace rot4
