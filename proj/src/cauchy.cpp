#include "qcs/cauchy.hpp"

#include <cmath>
#include <numbers>

namespace qcs {
namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

std::pair<double, double> integration_window(const ParametrizedCurve& curve,
                                             const Density& f) {
    if (curve.domain == ParametrizedCurve::Domain::unit_circle)
        return {-std::numbers::pi, std::numbers::pi};
    return {f.support_lo, f.support_hi};
}

void check_off_curve(const ParametrizedCurve& curve, const Density& f,
                     Complex z, const CauchyOptions& opt) {
    if (opt.min_distance <= 0) return;
    auto [lo, hi] = integration_window(curve, f);
    if (distance_to_curve(curve, z, lo, hi, 256) < opt.min_distance)
        throw DomainError(
            "cauchy_transform: point too close to the curve; use "
            "plemelj_pair for boundary values");
}

}  // namespace

Complex cauchy_transform(const ParametrizedCurve& curve, const Density& f,
                         Complex z, const CauchyOptions& opt) {
    check_off_curve(curve, f, z, opt);
    auto [lo, hi] = integration_window(curve, f);
    QuadratureResult r = integrate_1d(
        [&](double s) {
            return f.values(s) * curve.d1(s) / (curve.point(s) - z);
        },
        lo, hi, opt.quad);
    return r.value / kTwoPiI;
}

Complex cauchy_transform_derivative(const ParametrizedCurve& curve,
                                    const Density& f, Complex z,
                                    const CauchyOptions& opt) {
    check_off_curve(curve, f, z, opt);
    auto [lo, hi] = integration_window(curve, f);
    QuadratureResult r = integrate_1d(
        [&](double s) {
            const Complex d = curve.point(s) - z;
            return f.values(s) * curve.d1(s) / (d * d);
        },
        lo, hi, opt.quad);
    return r.value / kTwoPiI;
}

PlemeljPair plemelj_pair(const ParametrizedCurve& curve, const Density& f,
                         double s, const CauchyOptions& opt) {
    double lo, hi;
    if (curve.domain == ParametrizedCurve::Domain::unit_circle) {
        lo = s - std::numbers::pi;
        hi = s + std::numbers::pi;
    } else {
        // Widen so the pole is strictly interior; the density vanishes off
        // its support, so the extra range costs nothing.
        lo = std::min(f.support_lo, s - 1.0);
        hi = std::max(f.support_hi, s + 1.0);
    }
    const Complex zs = curve.point(s);
    QuadratureOptions pv_opt = opt.quad;
    pv_opt.abs_tol = std::max(pv_opt.abs_tol, 1e-10);
    QuadratureResult pv = integrate_pv(
        [&](double t) {
            return f.values(t) * curve.d1(t) / (curve.point(t) - zs);
        },
        s, lo, hi, pv_opt);
    const Complex principal = pv.value / kTwoPiI;
    const Complex half = 0.5 * f.values(s);
    return {half + principal, -half + principal};
}

Complex jump(const ParametrizedCurve& curve, const Density& f, double s,
             const CauchyOptions& opt) {
    PlemeljPair p = plemelj_pair(curve, f, s, opt);
    return p.plus - p.minus;
}

}  // namespace qcs
