#include "qcs/example5.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/fields.hpp"
#include "qcs/parallel.hpp"

namespace qcs {
namespace {

constexpr double kPi = std::numbers::pi;

Complex principal_log_arg(Complex z) {
    // (1−z)/10 must stay in the right half-plane for the principal branch.
    const Complex u = (1.0 - z) / 10.0;
    if (std::abs(u) == 0.0) return u;  // removable limit, handled by callers
    // Closed right half-plane: Re u can round to exactly 0 on the circle
    // (1 - cos s underflows) while the principal branch is still fine.
    if (u.real() < 0.0)
        throw DomainError("principal branch violation at this point");
    return u;
}

Complex f_eval(Complex z) {
    const Complex u = principal_log_arg(z);
    if (std::abs(u) == 0.0) return (9.0 + z) / 5.0;  // u/log(u) -> 0
    return (9.0 + z) / 5.0 + u / std::log(u);
}

Complex f1_eval(Complex z) {
    const Complex u = principal_log_arg(z);
    if (std::abs(u) == 0.0) return {0.2, 0.0};  // 1/L -> 0
    const Complex L = std::log(u);
    return 0.1 * (2.0 - 1.0 / L + 1.0 / (L * L));
}

Complex f2_eval(Complex z) {
    const Complex u = principal_log_arg(z);
    if (std::abs(u) == 0.0)
        throw DomainError("second derivative is singular at 1");
    const Complex L = std::log(u);
    return 0.01 * (2.0 / L - 1.0) / (u * L * L);
}

Complex mu_formula(Complex z) {
    const Complex zb = std::conj(z);
    const Complex w = 1.0 / zb;
    return -f2_eval(w) * (z - w) / (zb * zb * f1_eval(w));
}

}  // namespace

namespace section5 {

Section5Map build() {
    Section5Map m;
    m.h = [](Complex z) { return (9.0 + z) / 10.0; };
    m.g = [](Complex w) {
        const Complex u = 1.0 - w;
        if (!(u.real() > 0.0) || std::abs(u) == 0.0)
            throw DomainError("principal branch violation at this point");
        return 2.0 * w + u / std::log(u);
    };
    m.f = f_eval;
    m.f1 = f1_eval;
    m.f2 = f2_eval;

    const double lo = m.annulus_lo, hi = m.annulus_hi;
    ExplicitQCMap ext;
    ext.eval = [](Complex z) {
        const Complex w = 1.0 / std::conj(z);
        return f_eval(w) + f1_eval(w) * (z - w);
    };
    ext.wirtinger_z = [](Complex z) { return f1_eval(1.0 / std::conj(z)); };
    ext.wirtinger_zbar = [](Complex z) {
        const Complex zb = std::conj(z);
        const Complex w = 1.0 / zb;
        return -f2_eval(w) * (z - w) / (zb * zb);
    };
    ext.conformal_outside = {-hi, hi, -hi, hi};
    ext.geometry = FieldGeometry::circle;
    ext.in_domain = [lo, hi](Complex z) {
        const double r = std::abs(z);
        return r > lo && r < hi;
    };
    m.extension = ext;
    return m;
}

double becker_criterion(const Section5Map& map, int grid_n, ExecPolicy exec) {
    const int n = std::max(grid_n, 2);
    std::vector<double> row_max = parallel_map<double>(
        static_cast<std::size_t>(n), exec, [&](std::size_t i) {
            const double r =
                (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            double m = 0.0;
            for (int j = 0; j < n; ++j) {
                const double th = -kPi + (2.0 * kPi * (j + 0.5)) / n;
                const Complex z = std::polar(r, th);
                const double v = (1.0 - r * r) *
                                 std::abs(z * map.f2(z) / map.f1(z));
                m = std::max(m, v);
            }
            return m;
        });
    double sup = 0.0;
    for (double v : row_max) sup = std::max(sup, v);
    return sup;
}

double limsup_ratio(const Section5Map& map,
                    const std::vector<double>& radii) {
    double worst = 0.0;
    for (double r : radii) {
        if (!(r > 0.0 && r < 1.0))
            throw DomainError("limsup_ratio: radii must lie in (0,1)");
        const Complex z{r, 0.0};
        worst = std::max(worst,
                         (1.0 - r) * std::abs(map.f2(z)) /
                             std::abs(map.f1(z)));
    }
    return worst;
}

Complex extension_mu(const Section5Map& map, Complex z) {
    const double r = std::abs(z);
    if (!(r > map.annulus_lo && r < map.annulus_hi))
        throw DomainError("extension_mu: point outside the annulus");
    return mu_formula(z);
}

DilatationField field(const Section5Map& map) {
    DilatationField mu;
    const double lo = map.annulus_lo, hi = map.annulus_hi;
    mu.eval = [lo, hi](Complex z) {
        const double r = std::abs(z);
        if (!(r > lo && r < hi)) return Complex{0, 0};
        return mu_formula(z);
    };
    mu.support_box = {-hi, hi, -hi, hi};
    mu.sup_bound = 0.06;  // sampled sup is ~0.0496 on the annulus
    mu.geometry = FieldGeometry::circle;
    mu.slice_hints = {0.0};  // |μ| peaks near angle 0 (the point 1)
    return mu;
}

double sigma_radial(const Section5Map& map, double r) {
    if (!(r - 1.0 > 1e-6 && r - 1.0 < 0.1))
        throw DomainError("sigma_radial: need r-1 in (1e-6, 0.1)");
    return sigma_profile(field(map), r - 1.0);
}

IntegralVerdict condition2_check(const Section5Map& map) {
    const DilatationField mu = field(map);
    DyadicOptions opt;
    opt.floor = 1e-8;
    // The slice norms below carry ~1e-8 relative quadrature noise, so the
    // shell quadrature must not ask for more accuracy than that.
    opt.quad = QuadratureOptions{1e-12, 1e-7, 200'000, ExecPolicy::serial};
    const QuadratureOptions slice_opt{0.0, 1e-8, 20'000'000,
                                      ExecPolicy::serial};
    return improper_dyadic(
        [&](double s) {
            const double sig = sigma_profile(mu, s, slice_opt);
            return Complex{sig / std::pow(s, 1.5), 0.0};
        },
        0.0, 0.09, opt);
}

double omega_fprime(const Section5Map& map, double t) {
    if (!(t > 0)) throw DomainError("omega_fprime: t must be positive");
    auto F = [&](double s) { return map.f1(std::polar(1.0, s)); };
    // The derivative varies fastest near angle 0; a window of ±1 radian
    // captures the sup for every scale of interest.
    return modulus_of_continuity(F, t, -1.0, 1.0);
}

IntegralVerdict dini_failure_check(const Section5Map& map) {
    const double outer = 0.1;
    const int K = 30;
    std::vector<double> ts(K + 1), ws(K + 1);
    for (int k = 0; k <= K; ++k) {
        ts[k] = std::ldexp(outer, -k);
        ws[k] = omega_fprime(map, ts[k]);
    }
    // ω is nondecreasing in t; clean sampling noise before interpolating.
    for (int k = K - 1; k >= 0; --k) ws[k] = std::max(ws[k], ws[k + 1]);
    auto omega = [ts, ws](double t) {
        if (t >= ts.front()) return ws.front();
        if (t <= ts.back()) return ws.back();
        auto it = std::lower_bound(ts.begin(), ts.end(), t,
                                   std::greater<double>());
        const std::size_t j = static_cast<std::size_t>(it - ts.begin());
        const double w = (std::log(t) - std::log(ts[j])) /
                         (std::log(ts[j - 1]) - std::log(ts[j]));
        return ws[j] + w * (ws[j - 1] - ws[j]);
    };
    DyadicOptions opt;
    opt.floor = ts[K - 1];
    return dini_verdict(omega, outer, opt.floor, opt);
}

ParametrizedCurve boundary_curve(const Section5Map& map) {
    ParametrizedCurve c;
    c.domain = ParametrizedCurve::Domain::unit_circle;
    auto f = map.f;
    auto f1 = map.f1;
    c.point = [f](double s) { return f(std::polar(1.0, s)); };
    c.d1 = [f1](double s) {
        const Complex z = std::polar(1.0, s);
        return f1(z) * Complex{0, 1} * z;
    };
    auto d1 = c.d1;
    c.d2 = [d1](double s) {
        const double h = 1e-6;
        return (d1(s + h) - d1(s - h)) / (2.0 * h);
    };
    return c;
}

}  // namespace section5

DilatationField make_section5() { return section5::field(section5::build()); }

}  // namespace qcs
