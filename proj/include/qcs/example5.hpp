#pragma once
#include <vector>

#include "qcs/semmes.hpp"

namespace qcs {

// The explicit univalent map f = g∘h on the disk and its quasiconformal
// reflection extension on the annulus 1 < |z| < 1.1:
//   h(z) = (9+z)/10,  g(w) = 2w + (1−w)/log(1−w)  (principal branch),
//   F(z) = f(1/z̄) + f'(1/z̄)(z − 1/z̄).
struct Section5Map {
    std::function<Complex(Complex)> h, g, f, f1, f2;  // f1 = f', f2 = f''
    ExplicitQCMap extension;
    double annulus_lo = 1.0;
    double annulus_hi = 1.1;
};

namespace section5 {

Section5Map build();

// sup over an n×n polar grid in the disk of (1−|z|²)·|z·f''(z)/f'(z)|.
double becker_criterion(const Section5Map& map, int grid_n = 100,
                        ExecPolicy exec = default_exec_policy());

// max over the given radii of (1−r)·|f''(r)|/|f'(r)| (real path to 1).
double limsup_ratio(const Section5Map& map, const std::vector<double>& radii);

// Exact dilatation of the extension; DomainError outside the annulus.
Complex extension_mu(const Section5Map& map, Complex z);

// σ(r) = (∫ |μ(r e^{iθ})|² r dθ)^{1/2}, valid for r−1 in (1e−6, 0.1).
double sigma_radial(const Section5Map& map, double r);

// Dyadic verdict for ∫ σ(r)/(r−1)^{3/2} dr toward r = 1⁺.
IntegralVerdict condition2_check(const Section5Map& map);

// Sampled modulus of continuity of s ↦ f'(e^{is}) at scale t.
double omega_fprime(const Section5Map& map, double t);

// Dyadic verdict for ∫ ω_{f'}(t)/t dt toward 0 (sampled, monotone-enforced
// dyadic ω with log-linear interpolation).
IntegralVerdict dini_failure_check(const Section5Map& map);

// Γ = f(unit circle) with chain-rule derivative.
ParametrizedCurve boundary_curve(const Section5Map& map);

// The extension's dilatation as a DilatationField on the annulus.
DilatationField field(const Section5Map& map);

}  // namespace section5
}  // namespace qcs
