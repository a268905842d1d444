#pragma once
#include <map>
#include <optional>
#include <vector>

#include "qcs/quadrature.hpp"

namespace qcs {

enum class FieldGeometry { line, circle };

// A complex dilatation field: bounded measurable μ with compact support and
// sup norm below 1. The evaluator must be pure (thread-safe). For circle
// geometry the distinguished boundary is the unit circle instead of ℝ.
struct DilatationField {
    std::function<Complex(Complex)> eval;
    Rect support_box{0, 0, 0, 0};
    double sup_bound = 0.0;
    FieldGeometry geometry = FieldGeometry::line;

    // Optional closed-form monotonic majorant μ*(t); used instead of the
    // sampling estimator when present.
    std::function<double(double)> majorant_hint;
    // Angular positions (circle) / x positions (line) where boundary slices
    // need graded subdivision (sharp peaks narrower than the slice height).
    std::vector<double> slice_hints;

    // Distance to the distinguished boundary (|Im z| or ||z|-1|).
    double boundary_distance(Complex z) const;
    bool empty() const { return support_box.area() == 0; }
};

// Sampled monotonic majorant μ*(t) = esssup{|μ(z)| : 0 < dist(z) < t} on a
// decreasing grid of heights. Values are lower-bound estimates unless an
// exact evaluator is attached.
struct MonotonicMajorant {
    std::vector<double> heights;  // decreasing toward 0
    std::vector<double> values;   // nondecreasing in height, same length
    int refinement_depth = 0;
    std::function<double(double)> exact;

    double eval(double t) const;
    static MonotonicMajorant from_function(std::function<double(double)> fn);
};

struct MajorantOptions {
    int grid_points = 48;
    double top_fraction = 1.0;  // top height = fraction of support height
    int initial_samples = 256;
    int max_depth = 6;
    double agree_rel = 0.01;
};

MonotonicMajorant majorant(const DilatationField& mu,
                           MajorantOptions opt = {});

// σ(y) = (∫ |μ(x+iy)|² dx)^{1/2}; circle geometry uses the θ-slice at
// radius 1+|y| with arc-length measure.
double sigma_profile(const DilatationField& mu, double y,
                     QuadratureOptions opt = {0.0, 1e-10, 2'000'000,
                                              ExecPolicy::serial});

// Condition 1: dyadic verdict for ∫_0^outer μ*(t)/t · log(1/t) dt.
IntegralVerdict condition1(const MonotonicMajorant& mu_star, double outer,
                           DyadicOptions opt = {});

// Condition 2 (integral part): ∫ σ(y)/|y|^{3/2} dy over both signs of y.
IntegralVerdict condition2(const DilatationField& mu, double inner,
                           double outer, DyadicOptions opt = {});

// Condition 2 (mean part): sup over probes of |μ(z0)| divided by the mean
// of |μ| over the disk of radius C·dist(z0). Returns +inf when a mean
// vanishes under a nonzero numerator.
double condition3_ratio(const DilatationField& mu, double C,
                        const std::vector<Complex>& probes);

// Teichmüller-Wittich-Belinski integral ∬ |μ(z+t)|/|z|² dxdy, via polar
// shells around the (shifted) origin.
IntegralVerdict twb_integral(const DilatationField& mu, double t,
                             double inner_cut = 0.0, DyadicOptions opt = {});

// ∬ |μ(z)| / (|z-a| · dist(z)) dxdy with dyadic treatment near the boundary.
// For circle geometry `a` is an angle and the kernel point is e^{ia}.
IntegralVerdict prop1_integral(const DilatationField& mu, double a,
                               DyadicOptions opt = {});

struct ReportParams {
    double outer = 0.25;           // clamped to half the support height
    double cond3_C = 0.5;
    double cond3_threshold = 100.0;
    std::vector<Complex> cond3_probes;   // default: generated from support
    std::vector<double> twb_shifts{0.0};
    std::vector<double> prop1_points{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0,
                                     10.0};
    DyadicOptions dyadic{};
    MajorantOptions majorant{};
};

struct ConditionReport {
    IntegralVerdict condition1;
    IntegralVerdict condition2;
    std::optional<double> condition3_ratio;  // absent on engine failure
    std::optional<double> twb_sup_over_t;
    std::optional<double> prop1_sup_over_a;
    IntegralVerdict twb_worst;
    IntegralVerdict prop1_worst;
    bool admissible = false;
    std::string summary;
};

// Aggregates all checks. ADMISSIBLE when condition 1 converges, or when
// condition 2 converges with a finite mean-ratio below the threshold.
// Engine failures degrade the affected entries to Inconclusive.
ConditionReport full_report(const DilatationField& mu,
                            const ReportParams& params = {});

}  // namespace qcs
