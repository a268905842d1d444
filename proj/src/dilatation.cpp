#include "qcs/dilatation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qcs {
namespace {

constexpr double kPi = std::numbers::pi;

// Low-discrepancy 1D sequence (golden-ratio rotation).
double golden(std::size_t i, double offset) {
    constexpr double phi = 0.6180339887498949;
    double v = offset + static_cast<double>(i + 1) * phi;
    return v - std::floor(v);
}

// Breakpoints for panels graded dyadically around each focus at the given
// scale; integrands with peaks of width ~scale become smooth per panel.
std::vector<double> graded_breakpoints(double lo, double hi,
                                       const std::vector<double>& foci,
                                       double scale) {
    std::vector<double> pts{lo, hi};
    for (double f : foci) {
        if (f < lo - (hi - lo) || f > hi + (hi - lo)) continue;
        pts.push_back(std::clamp(f, lo, hi));
        for (double d = scale; d < (hi - lo); d *= 2) {
            if (f + d > lo && f + d < hi) pts.push_back(f + d);
            if (f - d > lo && f - d < hi) pts.push_back(f - d);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

QuadratureResult integrate_panels(const RealFn& f,
                                  const std::vector<double>& pts,
                                  const QuadratureOptions& opt) {
    QuadratureResult total;
    total.converged = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadratureResult r = integrate_1d(f, pts[i], pts[i + 1], opt);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
        total.converged = total.converged && r.converged;
    }
    return total;
}

// Integral over the boundary slice at height y of g(z) with the slice
// measure (dx on lines, r dθ on circles). extra_foci are positions (x or θ)
// needing graded panels at the given scale in addition to the field's own
// hints.
QuadratureResult slice_integrate(const DilatationField& mu, double y,
                                 const std::function<Complex(Complex)>& g,
                                 std::vector<double> extra_foci,
                                 double focus_scale,
                                 const QuadratureOptions& opt) {
    if (mu.geometry == FieldGeometry::line) {
        std::vector<double> foci = mu.slice_hints;
        foci.insert(foci.end(), extra_foci.begin(), extra_foci.end());
        const double scale = std::max(std::abs(y), focus_scale);
        auto pts = graded_breakpoints(mu.support_box.x0, mu.support_box.x1,
                                      foci, std::max(scale, 1e-14));
        return integrate_panels([&](double x) { return g(Complex{x, y}); },
                                pts, opt);
    }
    const double r = 1.0 + std::abs(y);
    std::vector<double> foci = mu.slice_hints;
    foci.insert(foci.end(), extra_foci.begin(), extra_foci.end());
    const double scale = std::max(std::abs(y), focus_scale);
    auto pts = graded_breakpoints(-kPi, kPi, foci, std::max(scale, 1e-14));
    return integrate_panels(
        [&](double th) { return g(std::polar(r, th)) * r; }, pts, opt);
}

IntegralVerdict combine_sides(IntegralVerdict pos, const IntegralVerdict& neg) {
    IntegralVerdict v = std::move(pos);
    if (neg.kind == VerdictKind::Divergent) v.kind = VerdictKind::Divergent;
    else if (neg.kind == VerdictKind::Inconclusive &&
             v.kind == VerdictKind::Convergent)
        v.kind = VerdictKind::Inconclusive;
    v.value += neg.value;
    v.abs_error += neg.abs_error;
    v.note += " | other side: " + neg.note;
    return v;
}

}  // namespace

double DilatationField::boundary_distance(Complex z) const {
    return geometry == FieldGeometry::line ? std::abs(z.imag())
                                           : std::abs(std::abs(z) - 1.0);
}

double MonotonicMajorant::eval(double t) const {
    t = std::abs(t);
    if (exact) return exact(t);
    if (heights.empty() || t <= 0) return 0.0;
    if (t >= heights.front()) return values.front();
    if (t <= heights.back()) return values.back();
    // heights decreasing; log-linear interpolation.
    auto it = std::lower_bound(heights.begin(), heights.end(), t,
                               std::greater<double>());
    const std::size_t j = static_cast<std::size_t>(it - heights.begin());
    const double h1 = heights[j - 1], h0 = heights[j];
    const double w = (std::log(t) - std::log(h0)) /
                     (std::log(h1) - std::log(h0));
    return values[j] + w * (values[j - 1] - values[j]);
}

MonotonicMajorant MonotonicMajorant::from_function(
    std::function<double(double)> fn) {
    MonotonicMajorant m;
    m.exact = std::move(fn);
    return m;
}

MonotonicMajorant majorant(const DilatationField& mu, MajorantOptions opt) {
    MonotonicMajorant m;
    if (mu.majorant_hint) {
        m.exact = mu.majorant_hint;
        return m;
    }
    if (mu.empty()) {
        m.heights = {1.0};
        m.values = {0.0};
        return m;
    }
    const double h_top =
        mu.geometry == FieldGeometry::line
            ? std::max(std::abs(mu.support_box.y0),
                       std::abs(mu.support_box.y1)) * opt.top_fraction
            : 0.5;  // annulus fields: strips are |r-1| bands
    m.heights.resize(opt.grid_points);
    for (int j = 0; j < opt.grid_points; ++j)
        m.heights[j] = std::ldexp(h_top, -j);

    // esssup estimate per dyadic band, refined by doubling until stable.
    std::vector<double> band(opt.grid_points, 0.0);
    const double x0 = mu.support_box.x0, w = mu.support_box.width();
    for (int j = 0; j < opt.grid_points; ++j) {
        const double blo = m.heights[j] * 0.5, bhi = m.heights[j];
        double prev = -1.0, cur = 0.0;
        int n = opt.initial_samples;
        for (int depth = 0; depth <= opt.max_depth; ++depth) {
            cur = prev < 0 ? 0.0 : cur;
            for (int i = 0; i < n; ++i) {
                const double u = golden(static_cast<std::size_t>(i), 0.17);
                const double v =
                    golden(static_cast<std::size_t>(i), 0.59);
                const double d = blo + v * (bhi - blo);
                Complex z;
                if (mu.geometry == FieldGeometry::line)
                    z = {x0 + u * w, (i % 2 == 0 ? d : -d)};
                else
                    z = std::polar(1.0 + (i % 2 == 0 ? d : -d) *
                                   ((i / 2) % 2 == 0 ? 1.0 : -1.0),
                                   -kPi + 2 * kPi * u);
                cur = std::max(cur, std::abs(mu.eval(z)));
            }
            m.refinement_depth = std::max(m.refinement_depth, depth);
            if (prev >= 0 && cur <= prev * (1 + opt.agree_rel) &&
                cur >= prev * (1 - opt.agree_rel))
                break;
            prev = cur;
            n *= 2;
        }
        band[j] = cur;
    }
    m.values.resize(opt.grid_points);
    double acc = 0.0;
    for (int j = opt.grid_points - 1; j >= 0; --j) {
        acc = std::max(acc, band[j]);
        m.values[j] = acc;
    }
    return m;
}

double sigma_profile(const DilatationField& mu, double y,
                     QuadratureOptions opt) {
    if (y == 0.0) throw DomainError("sigma_profile: y must be nonzero");
    if (mu.empty()) return 0.0;
    QuadratureResult r = slice_integrate(
        mu, y,
        [&](Complex z) {
            const double a = std::abs(mu.eval(z));
            return Complex{a * a, 0.0};
        },
        {}, 0.0, opt);
    return std::sqrt(std::max(0.0, r.value.real()));
}

IntegralVerdict condition1(const MonotonicMajorant& mu_star, double outer,
                           DyadicOptions opt) {
    if (!(outer > 0) || outer >= 1.0)
        throw DomainError("condition1: outer must lie in (0, 1)");
    if (!mu_star.exact && !mu_star.heights.empty())
        opt.floor = std::max(opt.floor, mu_star.heights.back());
    return improper_dyadic(
        [&](double t) {
            return Complex{mu_star.eval(t) / t * std::log(1.0 / t), 0.0};
        },
        0.0, outer, opt);
}

IntegralVerdict condition2(const DilatationField& mu, double inner,
                           double outer, DyadicOptions opt) {
    if (!(outer > 0)) throw DomainError("condition2: outer must be positive");
    auto side = [&](double sign) {
        return improper_dyadic(
            [&, sign](double t) {
                const double s = sigma_profile(mu, sign * t, opt.quad);
                return Complex{s / std::pow(t, 1.5), 0.0};
            },
            inner, outer, opt);
    };
    return combine_sides(side(+1.0), side(-1.0));
}

double condition3_ratio(const DilatationField& mu, double C,
                        const std::vector<Complex>& probes) {
    if (!(C > 0)) throw DomainError("condition3_ratio: C must be positive");
    double sup = 0.0;
    for (Complex z0 : probes) {
        const double d = mu.boundary_distance(z0);
        if (!(d > 0))
            throw DomainError("condition3_ratio: probe on the boundary");
        const double R = C * d;
        if (R < 1e-12 * (1.0 + std::abs(z0)))
            throw DomainError("condition3_ratio: degenerate disk");
        QuadratureOptions th_opt{0.0, 1e-9, 400'000, ExecPolicy::serial};
        QuadratureOptions rad_opt{0.0, 1e-8, 2'000'000, ExecPolicy::serial};
        // Split the radial range at an irrational ratio so refinement nodes
        // cannot land exactly on dyadic-radius features of the field (an
        // exact hit puts a whole angular slice on the feature's boundary).
        constexpr double kGolden = 0.6180339887498949;
        QuadratureResult rad = integrate_panels(
            [&](double r) {
                QuadratureResult th = integrate_1d(
                    [&](double a) {
                        return Complex{
                            std::abs(mu.eval(z0 + std::polar(r, a))), 0.0};
                    },
                    0.0, 2 * kPi, th_opt);
                return th.value * r;
            },
            {0.0, kGolden * R, R}, rad_opt);
        const double mean = rad.value.real() / (kPi * R * R);
        const double num = std::abs(mu.eval(z0));
        double ratio;
        if (mean <= 0)
            ratio = num > 0 ? std::numeric_limits<double>::infinity() : 0.0;
        else
            ratio = num / mean;
        sup = std::max(sup, ratio);
    }
    return sup;
}

IntegralVerdict twb_integral(const DilatationField& mu, double t,
                             double inner_cut, DyadicOptions opt) {
    if (mu.empty()) {
        IntegralVerdict v;
        v.kind = VerdictKind::Convergent;
        v.note = "empty support";
        v.dyadic_trace.push_back({0, 0, 0, {0, 0}, {0, 0}});
        return v;
    }
    const Rect& b = mu.support_box;
    double rmax = 0.0;
    for (double cx : {b.x0, b.x1})
        for (double cy : {b.y0, b.y1})
            rmax = std::max(rmax, std::abs(Complex{cx - t, cy}));
    // Panel the circle of radius r around t so that every angle where the
    // integrand can jump or kink lands on a breakpoint: crossings of the
    // support-box edges (line fields) or of the field's sharp spots (circle
    // fields, graded dyadically at a radius-dependent scale).
    auto arc = [&](double r) {
        std::vector<double> pts{-kPi, kPi};
        if (mu.geometry == FieldGeometry::line) {
            auto add = [&](double a) {
                if (a > -kPi && a < kPi) pts.push_back(a);
            };
            for (double cx : {b.x0, b.x1}) {
                const double c = (cx - t) / r;
                if (c >= -1.0 && c <= 1.0) {
                    const double a = std::acos(c);
                    add(a);
                    add(-a);
                }
            }
            for (double cy : {b.y0, b.y1}) {
                const double s = cy / r;
                if (s >= -1.0 && s <= 1.0) {
                    const double a = std::asin(s);
                    add(a);
                    add(a >= 0 ? kPi - a : -kPi - a);
                }
            }
            add(0.0);
            add(kPi / 2);
            add(-kPi / 2);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        } else {
            std::vector<double> foci;
            double scale = kPi;
            for (double hint : mu.slice_hints) {
                const Complex p = std::polar(1.0, hint) - Complex{t, 0.0};
                if (std::abs(p) > 0) foci.push_back(std::arg(p));
                scale = std::min(scale, std::max(std::abs(r - std::abs(p)),
                                                 1e-7 * (1 + r)));
            }
            pts = graded_breakpoints(-kPi, kPi, foci, scale);
        }
        QuadratureOptions aopt{1e-13 * (1.0 + mu.sup_bound), 1e-9, 400'000,
                               ExecPolicy::serial};
        return integrate_panels(
            [&](double a) {
                return Complex{
                    std::abs(mu.eval(Complex{t, 0.0} + std::polar(r, a))),
                    0.0};
            },
            pts, aopt);
    };
    opt.floor = std::max(opt.floor, inner_cut);
    if (opt.max_shells > 150) opt.max_shells = 150;
    return improper_dyadic(
        [&](double r) { return arc(r).value / r; }, inner_cut, rmax, opt);
}

IntegralVerdict prop1_integral(const DilatationField& mu, double a,
                               DyadicOptions opt) {
    if (mu.empty()) {
        IntegralVerdict v;
        v.kind = VerdictKind::Convergent;
        v.note = "empty support";
        v.dyadic_trace.push_back({0, 0, 0, {0, 0}, {0, 0}});
        return v;
    }
    const Rect& b = mu.support_box;
    if (opt.max_shells > 120) opt.max_shells = 120;
    // The slice values carry ~0.01*tol absolute noise (see sopt below), so
    // the shell quadrature needs a matching absolute floor or it cannot
    // converge against that noise.
    opt.quad.abs_tol = std::max(opt.quad.abs_tol, 0.01 * opt.tol);
    const Complex pole = mu.geometry == FieldGeometry::line
                             ? Complex{a, 0.0}
                             : std::polar(1.0, a);
    const double pole_focus =
        mu.geometry == FieldGeometry::line ? a : a;  // x or θ position
    auto p = [&](double y) {
        // Shell terms only need ~opt.tol absolute accuracy, so give the
        // slice quadrature an absolute floor; pure relative tolerance makes
        // deep slices (tiny values near the kernel point) grind against
        // round-off.
        QuadratureOptions sopt{0.01 * opt.tol, 1e-9, 400'000,
                               ExecPolicy::serial};
        QuadratureResult r = slice_integrate(
            mu, y,
            [&](Complex z) {
                const double dz = std::abs(z - pole);
                return Complex{std::abs(mu.eval(z)) /
                                   std::max(dz, 1e-300),
                               0.0};
            },
            {pole_focus}, std::abs(y), sopt);
        return r.value / std::abs(y);
    };
    const double outer =
        mu.geometry == FieldGeometry::line
            ? std::max(std::abs(b.y0), std::abs(b.y1))
            : 0.5;
    IntegralVerdict up = improper_dyadic([&](double y) { return p(y); }, 0.0,
                                         outer, opt);
    IntegralVerdict dn = improper_dyadic([&](double y) { return p(-y); },
                                         0.0, outer, opt);
    return combine_sides(std::move(up), dn);
}

ConditionReport full_report(const DilatationField& mu,
                            const ReportParams& params) {
    ConditionReport rep;
    ReportParams p = params;
    const double height =
        mu.geometry == FieldGeometry::line
            ? std::max(std::abs(mu.support_box.y0),
                       std::abs(mu.support_box.y1))
            : 0.1;
    if (!mu.empty() && height > 0) p.outer = std::min(p.outer, 0.5 * height);
    p.outer = std::min(p.outer, 0.999);

    try {
        MonotonicMajorant ms = majorant(mu, p.majorant);
        rep.condition1 = mu.empty()
                             ? IntegralVerdict{VerdictKind::Convergent,
                                               {0, 0}, 0.0, {}, "empty"}
                             : condition1(ms, p.outer, p.dyadic);
    } catch (const Error& e) {
        rep.condition1.kind = VerdictKind::Inconclusive;
        rep.condition1.note = e.what();
    }
    try {
        rep.condition2 =
            mu.empty() ? IntegralVerdict{VerdictKind::Convergent, {0, 0},
                                         0.0, {}, "empty"}
                       : condition2(mu, 0.0, p.outer, p.dyadic);
    } catch (const Error& e) {
        rep.condition2.kind = VerdictKind::Inconclusive;
        rep.condition2.note = e.what();
    }
    try {
        std::vector<Complex> probes = p.cond3_probes;
        if (probes.empty() && !mu.empty()) {
            for (int k = 1; k <= 4; ++k) {
                const double d = height * std::ldexp(1.0, -k);
                if (mu.geometry == FieldGeometry::line) {
                    const double xc =
                        0.5 * (mu.support_box.x0 + mu.support_box.x1);
                    for (double dx : {-0.25, 0.0, 0.25})
                        probes.push_back(
                            {xc + dx * mu.support_box.width(), d});
                } else {
                    for (double th : {0.5, 2.0, -2.0})
                        probes.push_back(std::polar(1.0 + d, th));
                }
            }
        }
        rep.condition3_ratio =
            probes.empty() ? 0.0 : condition3_ratio(mu, p.cond3_C, probes);
    } catch (const Error&) {
        rep.condition3_ratio.reset();
    }
    try {
        double sup = 0.0;
        bool all_conv = true;
        for (double t : p.twb_shifts) {
            IntegralVerdict v = twb_integral(mu, t, 0.0, p.dyadic);
            if (!v.convergent()) {
                all_conv = false;
                rep.twb_worst = v;
            } else {
                sup = std::max(sup, std::abs(v.value));
                if (rep.twb_worst.dyadic_trace.empty() ||
                    std::abs(v.value) >= std::abs(rep.twb_worst.value))
                    rep.twb_worst = v;
            }
        }
        if (all_conv) rep.twb_sup_over_t = sup;
    } catch (const Error& e) {
        rep.twb_worst.kind = VerdictKind::Inconclusive;
        rep.twb_worst.note = e.what();
    }
    try {
        double sup = 0.0;
        bool all_conv = true;
        for (double a : p.prop1_points) {
            IntegralVerdict v = prop1_integral(mu, a, p.dyadic);
            if (!v.convergent()) {
                all_conv = false;
                rep.prop1_worst = v;
            } else {
                sup = std::max(sup, std::abs(v.value));
                if (rep.prop1_worst.dyadic_trace.empty() ||
                    std::abs(v.value) >= std::abs(rep.prop1_worst.value))
                    rep.prop1_worst = v;
            }
        }
        if (all_conv) rep.prop1_sup_over_a = sup;
    } catch (const Error& e) {
        rep.prop1_worst.kind = VerdictKind::Inconclusive;
        rep.prop1_worst.note = e.what();
    }

    const bool via1 = rep.condition1.convergent();
    const bool via2 = rep.condition2.convergent() &&
                      rep.condition3_ratio.has_value() &&
                      std::isfinite(*rep.condition3_ratio) &&
                      *rep.condition3_ratio <= p.cond3_threshold;
    rep.admissible = via1 || via2;
    rep.summary = rep.admissible
                      ? (via1 && via2 ? "ADMISSIBLE via conditions 1 and 2"
                         : via1       ? "ADMISSIBLE via condition 1"
                                      : "ADMISSIBLE via condition 2")
                      : "NOT ADMISSIBLE";
    return rep;
}

}  // namespace qcs
