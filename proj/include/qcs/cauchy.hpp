#pragma once
#include <optional>

#include "qcs/geometry.hpp"
#include "qcs/quadrature.hpp"

namespace qcs {

// Boundary density in curve-parameter form: values(s) = f(γ(s)).
// For the real line the density must vanish outside the support window.
struct Density {
    std::function<Complex(double)> values;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::optional<double> holder_hint;
};

struct CauchyOptions {
    QuadratureOptions quad{1e-10, 1e-12, 2'000'000, ExecPolicy::serial};
    // Refuse evaluation closer to the curve than this (use plemelj_pair for
    // boundary values). Set to 0 to skip the distance check in hot paths.
    double min_distance = 1e-10;
};

// (1/2πi) ∫ f(γ(s)) γ'(s)/(γ(s)-z) ds over the support window.
Complex cauchy_transform(const ParametrizedCurve& curve, const Density& f,
                         Complex z, const CauchyOptions& opt = {});

// d/dz of the transform: (1/2πi) ∫ f γ'/(γ-z)^2 ds.
Complex cauchy_transform_derivative(const ParametrizedCurve& curve,
                                    const Density& f, Complex z,
                                    const CauchyOptions& opt = {});

struct PlemeljPair {
    Complex plus;
    Complex minus;
};

// Boundary values F_± = ±f(γ(s))/2 + (1/2πi) PV∫ f γ'/(γ-γ(s)) ds'.
PlemeljPair plemelj_pair(const ParametrizedCurve& curve, const Density& f,
                         double s, const CauchyOptions& opt = {});

// F_+ - F_- (recovers the density for Hölder f).
Complex jump(const ParametrizedCurve& curve, const Density& f, double s,
             const CauchyOptions& opt = {});

}  // namespace qcs
