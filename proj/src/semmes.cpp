#include "qcs/semmes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/parallel.hpp"

namespace qcs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double bump_d1(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return bump(u) * (-2.0 * u / (q * q));
}

ParametrizedCurve base_curve(FieldGeometry g) {
    return g == FieldGeometry::line ? ParametrizedCurve::real_line()
                                    : ParametrizedCurve::unit_circle();
}

}  // namespace

DilatationField derive_mu(const ExplicitQCMap& rho) {
    const Rect box = rho.conformal_outside;
    // Degeneracy scan of ∂ρ before handing out the evaluator.
    if (box.area() > 0) {
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                const Complex z{box.x0 + box.width() * i / 8.0,
                                box.y0 + box.height() * j / 8.0};
                if (!rho.valid_at(z)) continue;
                if (std::abs(rho.wirtinger_z(z)) < 1e-12)
                    throw DomainError("derive_mu: degenerate derivative");
            }
    }
    DilatationField mu;
    mu.support_box = box;
    mu.geometry = rho.geometry;
    auto wz = rho.wirtinger_z;
    auto wzb = rho.wirtinger_zbar;
    auto valid = rho.in_domain;
    mu.eval = [box, wz, wzb, valid](Complex z) {
        if (!box.contains(z) || (valid && !valid(z))) return Complex{0, 0};
        const Complex d = wz(z);
        if (std::abs(d) < 1e-12)
            throw DomainError("derive_mu: degenerate derivative");
        return wzb(z) / d;
    };
    double m = 0.0;
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
            const Complex z{box.x0 + box.width() * i / 40.0,
                            box.y0 + box.height() * j / 40.0};
            if (box.area() > 0) m = std::max(m, std::abs(mu.eval(z)));
        }
    mu.sup_bound = std::min(1.25 * m, 1.0);
    return mu;
}

ParametrizedCurve image_curve(const ExplicitQCMap& rho) {
    ParametrizedCurve base = base_curve(rho.geometry);
    ParametrizedCurve c;
    c.domain = base.domain;
    auto ev = rho.eval;
    auto wz = rho.wirtinger_z;
    auto wzb = rho.wirtinger_zbar;
    auto p0 = base.point;
    auto t0 = base.d1;
    c.point = [ev, p0](double s) { return ev(p0(s)); };
    c.d1 = [wz, wzb, p0, t0](double s) {
        const Complex z = p0(s), t = t0(s);
        return wz(z) * t + wzb(z) * std::conj(t);
    };
    auto d1 = c.d1;
    c.d2 = [d1](double s) {
        const double h = 1e-6;
        return (d1(s + h) - d1(s - h)) / (2.0 * h);
    };
    return c;
}

Density pullback_density(const Density& f, const ExplicitQCMap&) {
    // Densities live in parameter space and γ(s) = ρ(γ₀(s)), so the
    // pullback keeps the same parameter values.
    return f;
}

Complex H_direct(const ExplicitQCMap& rho, const Density& f, Complex z0) {
    const ParametrizedCurve gamma = image_curve(rho);
    const ParametrizedCurve base = base_curve(rho.geometry);
    const Density g = pullback_density(f, rho);
    return cauchy_transform(gamma, f, rho.eval(z0)) -
           cauchy_transform(base, g, z0);
}

Complex H_via_formula(const ExplicitQCMap& rho, const Density& f, Complex z0,
                      double abs_tol) {
    const Rect box = rho.conformal_outside;
    if (box.area() == 0) return {0, 0};
    const DilatationField mu = derive_mu(rho);
    const ParametrizedCurve gamma = image_curve(rho);
    CauchyOptions copt;
    copt.min_distance = 0.0;  // hot path; probes are vetted by the caller
    copt.quad = {1e-9, 1e-10, 400'000, ExecPolicy::serial};
    auto dG = [&](Complex z) {
        return cauchy_transform_derivative(gamma, f, rho.eval(z), copt) *
               rho.wirtinger_z(z);
    };
    auto integrand = [&](Complex z) { return mu.eval(z) * dG(z) / (z - z0); };

    auto panels = [](double lo, double hi, std::vector<double> cuts) {
        std::vector<double> pts{lo, hi};
        for (double c : cuts)
            if (c > lo && c < hi) pts.push_back(c);
        std::sort(pts.begin(), pts.end());
        return pts;
    };
    const QuadratureOptions inner_opt{abs_tol / 10.0, 1e-9, 2'000'000,
                                      ExecPolicy::serial};
    const QuadratureOptions outer_opt{abs_tol, 1e-8, 4'000'000,
                                      ExecPolicy::serial};
    const auto xcuts = panels(box.x0, box.x1, {z0.real()});
    auto row = [&](double y) {
        Complex acc{0, 0};
        for (std::size_t i = 0; i + 1 < xcuts.size(); ++i)
            acc += integrate_1d(
                       [&](double x) { return integrand({x, y}); },
                       xcuts[i], xcuts[i + 1], inner_opt)
                       .value;
        return acc;
    };
    const auto ycuts = panels(box.y0, box.y1, {0.0, z0.imag()});
    Complex total{0, 0};
    for (std::size_t i = 0; i + 1 < ycuts.size(); ++i)
        total += integrate_1d(row, ycuts[i], ycuts[i + 1], outer_opt).value;
    return total * (-1.0 / kPi);
}

double lemma1_bounds(const DilatationField& mu, double l_Q, Lemma1Mode mode) {
    if (!(l_Q > 0) || l_Q >= 2.0 / std::numbers::e)
        throw DomainError("lemma1_bounds: need 0 < l_Q < 2/e");
    const double half = l_Q / 2.0;
    IntegralVerdict v;
    if (mode == Lemma1Mode::cond1) {
        MonotonicMajorant ms = majorant(mu);
        v = condition1(ms, half);
        v.value *= 2.0;  // both signs of t
    } else {
        v = condition2(mu, 0.0, half);
    }
    if (!v.convergent()) return kInf;
    return v.value.real();
}

double find_lq(const DilatationField& mu, double delta, Lemma1Mode mode,
               double l0) {
    double l = std::min(l0, 2.0 / std::numbers::e - 1e-9);
    for (int i = 0; i < 60; ++i) {
        const double b = lemma1_bounds(mu, l, mode);
        if (b <= delta / 2.0) return l;
        l /= 2.0;
    }
    throw NoConvergenceError("find_lq: bound did not reach delta/2");
}

double reverse_holder_ratio(const ExplicitQCMap& rho, Rect Q, double p) {
    if (!(p > 1.0)) throw DomainError("reverse_holder_ratio: need p > 1");
    if (Q.area() <= 0) throw DomainError("reverse_holder_ratio: empty Q");
    auto J = [&](Complex z) {
        const double a = std::abs(rho.wirtinger_z(z));
        const double b = std::abs(rho.wirtinger_zbar(z));
        const double j = a * a - b * b;
        if (!(j > 0))
            throw DomainError("reverse_holder_ratio: nonpositive Jacobian");
        return j;
    };
    const QuadratureOptions opt{0.0, 1e-11, 4'000'000, ExecPolicy::serial};
    auto mean_of = [&](const std::function<double(double)>& g) {
        const Complex num =
            integrate_2d([&](Complex z) { return Complex{g(J(z)), 0.0}; }, Q,
                         opt)
                .value;
        return num.real() / Q.area();
    };
    const double mp = mean_of([&](double j) { return std::pow(j, p); });
    const double m1 = mean_of([&](double j) { return j; });
    return std::pow(mp, 1.0 / p) / m1;
}

Theorem1Report theorem1_report(const ExplicitQCMap& rho, const Density& f,
                               const std::vector<Complex>& line_probes,
                               const std::vector<Complex>& plane_probes,
                               double gap_tol, ExecPolicy exec) {
    Theorem1Report rep;
    rep.line_records = parallel_map<ProbeRecord>(
        line_probes.size(), exec, [&](std::size_t i) {
            ProbeRecord r;
            r.z0 = line_probes[i];
            r.direct = H_direct(rho, f, r.z0);
            return r;
        });
    rep.plane_records = parallel_map<ProbeRecord>(
        plane_probes.size(), exec, [&](std::size_t i) {
            ProbeRecord r;
            r.z0 = plane_probes[i];
            r.direct = H_direct(rho, f, r.z0);
            r.formula = H_via_formula(rho, f, r.z0);
            r.gap = std::abs(r.direct - *r.formula);
            return r;
        });
    for (const ProbeRecord& r : rep.line_records)
        rep.sup_H_on_line = std::max(rep.sup_H_on_line, std::abs(r.direct));
    for (const ProbeRecord& r : rep.plane_records) {
        rep.sup_H_off_line = std::max(rep.sup_H_off_line, std::abs(r.direct));
        rep.eq7_vs_direct_max_gap = std::max(rep.eq7_vs_direct_max_gap, r.gap);
    }

    rep.bound_from_conditions = kInf;
    try {
        const DilatationField mu = derive_mu(rho);
        if (mu.empty()) {
            rep.bound_from_conditions = 0.0;
        } else {
            const double outer =
                std::min(0.25, 0.5 * std::max(std::abs(mu.support_box.y0),
                                              std::abs(mu.support_box.y1)));
            IntegralVerdict c1 = condition1(majorant(mu), outer);
            if (c1.convergent()) {
                rep.bound_from_conditions = std::abs(c1.value);
                rep.note = "bound from the log-weighted majorant integral";
            } else {
                IntegralVerdict c2 = condition2(mu, 0.0, outer);
                if (c2.convergent()) {
                    rep.bound_from_conditions = std::abs(c2.value);
                    rep.note = "bound from the slice-norm integral";
                }
            }
        }
    } catch (const Error& e) {
        rep.note = std::string("bound unavailable: ") + e.what();
    }

    const double sup_H = std::max(rep.sup_H_on_line, rep.sup_H_off_line);
    const bool gap_ok = rep.eq7_vs_direct_max_gap <= gap_tol;
    const bool bound_ok =
        rep.bound_from_conditions == kInf ||
        sup_H <= 50.0 * rep.bound_from_conditions + 1e-8;
    rep.consistent = gap_ok && bound_ok;
    return rep;
}

ExplicitQCMap make_identity_map() {
    ExplicitQCMap m;
    m.eval = [](Complex z) { return z; };
    m.wirtinger_z = [](Complex) { return Complex{1, 0}; };
    m.wirtinger_zbar = [](Complex) { return Complex{0, 0}; };
    return m;
}

ExplicitQCMap make_affine_map(Complex a, Complex b) {
    ExplicitQCMap m;
    m.eval = [a, b](Complex z) { return a * z + b; };
    m.wirtinger_z = [a](Complex) { return a; };
    m.wirtinger_zbar = [](Complex) { return Complex{0, 0}; };
    return m;
}

namespace {

// ρ(z) = z + ε·A·b(x)·c(y) with supplied c, c'.
ExplicitQCMap bump_map(double eps, Complex A, std::function<double(double)> c,
                       std::function<double(double)> cd) {
    ExplicitQCMap m;
    auto phi_x = [A, c](Complex z) {
        return A * bump_d1(z.real()) * c(z.imag());
    };
    auto phi_y = [A, cd](Complex z) {
        return A * bump(z.real()) * cd(z.imag());
    };
    m.eval = [eps, A, c](Complex z) {
        return z + eps * A * bump(z.real()) * c(z.imag());
    };
    m.wirtinger_z = [eps, phi_x, phi_y](Complex z) {
        return 1.0 + eps * 0.5 * (phi_x(z) - Complex{0, 1} * phi_y(z));
    };
    m.wirtinger_zbar = [eps, phi_x, phi_y](Complex z) {
        return eps * 0.5 * (phi_x(z) + Complex{0, 1} * phi_y(z));
    };
    m.conformal_outside = {-1, 1, -1, 1};
    return m;
}

}  // namespace

ExplicitQCMap make_bump_perturbation(double eps) {
    return bump_map(eps, {1.0, 0.5}, bump, bump_d1);
}

ExplicitQCMap make_admissible_bump(double eps) {
    auto c = [](double y) { return y * y * bump(y); };
    auto cd = [](double y) { return 2 * y * bump(y) + y * y * bump_d1(y); };
    return bump_map(eps, {1.0, 0.0}, c, cd);
}

Density make_bump_density() {
    Density f;
    f.values = [](double s) { return Complex{bump(s), 0.0}; };
    f.support_lo = -1.0;
    f.support_hi = 1.0;
    f.holder_hint = 1.0;
    return f;
}

double wirtinger_check(const ExplicitQCMap& rho,
                       const std::vector<Complex>& probes, double h) {
    double worst = 0.0;
    for (Complex z : probes) {
        if (!rho.valid_at(z)) continue;
        const Complex dx =
            (rho.eval(z + h) - rho.eval(z - h)) / (2.0 * h);
        const Complex dy = (rho.eval(z + Complex{0, h}) -
                            rho.eval(z - Complex{0, h})) /
                           (2.0 * h);
        const Complex wz = 0.5 * (dx - Complex{0, 1} * dy);
        const Complex wzb = 0.5 * (dx + Complex{0, 1} * dy);
        const double scale = std::max(1.0, std::abs(rho.wirtinger_z(z)));
        worst = std::max(worst,
                         std::abs(wz - rho.wirtinger_z(z)) / scale);
        worst = std::max(worst,
                         std::abs(wzb - rho.wirtinger_zbar(z)) / scale);
    }
    return worst;
}

}  // namespace qcs
