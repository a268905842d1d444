#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qcs/cauchy.hpp"
#include "qcs/dilatation.hpp"
#include "qcs/geometry.hpp"

namespace qcs {

// Explicit quasiconformal map with supplied Wirtinger derivatives.
// ∂̄ρ must vanish outside conformal_outside (the non-conformality box).
struct ExplicitQCMap {
    std::function<Complex(Complex)> eval;
    std::function<Complex(Complex)> wirtinger_z;     // ∂ρ
    std::function<Complex(Complex)> wirtinger_zbar;  // ∂̄ρ
    Rect conformal_outside{0, 0, 0, 0};
    FieldGeometry geometry = FieldGeometry::line;
    // Optional validity predicate (maps defined only near the boundary).
    std::function<bool(Complex)> in_domain;

    bool valid_at(Complex z) const { return !in_domain || in_domain(z); }
};

// μ = ∂̄ρ/∂ρ with support box conformal_outside. Throws DomainError when
// |∂ρ| degenerates on the probe grid.
DilatationField derive_mu(const ExplicitQCMap& rho);

// Γ = ρ(boundary), parametrized by the boundary parameter; γ' via the
// chain rule γ'(s) = ∂ρ(γ₀(s))·γ₀'(s) + ∂̄ρ(γ₀(s))·conj(γ₀'(s)).
ParametrizedCurve image_curve(const ExplicitQCMap& rho);

// Pullback of a boundary density along ρ. Densities are stored in
// parameter space, so the pullback keeps the same parameter values.
Density pullback_density(const Density& f, const ExplicitQCMap& rho);

// H(z0) = C_Γ(f)(ρ(z0)) − C_boundary(g)(z0), both transforms independent.
Complex H_direct(const ExplicitQCMap& rho, const Density& f, Complex z0);

// Same H through the area formula −(1/π)·∬ μ·∂G/(z−z0) dxdy with
// ∂G(z) = C'_Γ(f)(ρ(z))·∂ρ(z), integrated over the non-conformality box.
Complex H_via_formula(const ExplicitQCMap& rho, const Density& f, Complex z0,
                      double abs_tol = 1e-7);

enum class Lemma1Mode { cond1, cond2 };

// Truncated dominating integral over the square of side l_Q:
// cond1: ∫_{|t|<l/2} μ*(t)/|t|·log(1/|t|) dt; cond2: ∫_{|y|<l/2} σ(y)/|y|^{3/2} dy.
// Returns +inf when the truncated integral diverges.
double lemma1_bounds(const DilatationField& mu, double l_Q, Lemma1Mode mode);

// Smallest dyadic l_Q (halving from l0) with lemma1_bounds ≤ delta/2.
double find_lq(const DilatationField& mu, double delta, Lemma1Mode mode,
               double l0 = 0.5);

// (mean of J^p over Q)^{1/p} / (mean of J over Q), J = |∂ρ|² − |∂̄ρ|².
// Throws DomainError when J ≤ 0 is sampled.
double reverse_holder_ratio(const ExplicitQCMap& rho, Rect Q, double p);

struct ProbeRecord {
    Complex z0;
    Complex direct;
    std::optional<Complex> formula;  // absent for on-line probes
    double gap = 0.0;
};

struct Theorem1Report {
    double sup_H_on_line = 0.0;
    double sup_H_off_line = 0.0;
    double eq7_vs_direct_max_gap = 0.0;
    double bound_from_conditions = 0.0;  // +inf when not admissible
    bool consistent = false;
    std::vector<ProbeRecord> line_records;
    std::vector<ProbeRecord> plane_records;
    std::string note;
};

// Probe sweep of |H| near and away from the boundary, cross-validated
// against the area formula; consistency requires the gap below
// max(gap_tol, 10× quadrature error) and sup|H| dominated by the
// condition-derived bound (slack factor 50) when one is available.
Theorem1Report theorem1_report(const ExplicitQCMap& rho, const Density& f,
                               const std::vector<Complex>& line_probes,
                               const std::vector<Complex>& plane_probes,
                               double gap_tol = 1e-4,
                               ExecPolicy exec = default_exec_policy());

// Test map factories.
ExplicitQCMap make_identity_map();
ExplicitQCMap make_affine_map(Complex a, Complex b);  // ρ(z) = a·z + b
// ρ(z) = z + ε·(1+0.5i)·b(x)·b(y), b the standard C∞ bump on (−1,1).
ExplicitQCMap make_bump_perturbation(double eps);
// ρ(z) = z + ε·b(x)·y²·b(y): dilatation vanishing linearly at ℝ, so the
// log-weighted majorant integral converges.
ExplicitQCMap make_admissible_bump(double eps);

// Smooth compactly supported density in parameter space (the same bump).
Density make_bump_density();

// Max relative mismatch between supplied Wirtinger derivatives and centered
// finite differences over a probe grid (diagnostic used by tests).
double wirtinger_check(const ExplicitQCMap& rho,
                       const std::vector<Complex>& probes, double h = 1e-5);

}  // namespace qcs
