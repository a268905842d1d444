// Acceptance gate: one line per criterion, exit 0 only if all pass.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qcs/cauchy.hpp"
#include "qcs/dilatation.hpp"
#include "qcs/example5.hpp"
#include "qcs/fields.hpp"
#include "qcs/geometry.hpp"
#include "qcs/semmes.hpp"

using namespace qcs;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", ok ? "PASS" : "FAIL", idx,
                name, detail.c_str());
    if (!ok) ++failures;
}

void run(int idx, const char* name,
         const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        auto [ok, detail] = fn();
        report(idx, name, ok, detail);
    } catch (const std::exception& e) {
        report(idx, name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// --- criteria ---------------------------------------------------------

std::pair<bool, std::string> c1_condition1_closed_form() {
    auto ms = MonotonicMajorant::from_function(
        [](double t) { return std::sqrt(t); });
    auto v = condition1(ms, 0.5);
    const double expect = std::sqrt(0.5) * (4.0 + 2.0 * std::log(2.0));
    const double err = std::abs(v.value.real() - expect);
    return {v.kind == VerdictKind::Convergent && err < 1e-6,
            "value " + fmt(v.value.real()) + " vs " + fmt(expect) +
                ", |err| " + fmt(err)};
}

std::pair<bool, std::string> c2_condition2_closed_form() {
    auto v = condition2(make_power_law(0.75, {-1, 1, -1, 1}), 0, 1.0);
    const double expect = 8.0 * std::sqrt(2.0);
    const double err = std::abs(v.value.real() - expect);
    auto d = condition2(make_power_law(0.25, {-1, 1, -1, 1}), 0, 1.0);
    const bool ok = v.kind == VerdictKind::Convergent && err < 1e-6 &&
                    d.kind == VerdictKind::Divergent;
    return {ok, "alpha=3/4: " + fmt(v.value.real()) + " (err " + fmt(err) +
                    "), alpha=1/4: " + to_string(d.kind)};
}

std::pair<bool, std::string> c3_twb_closed_form() {
    auto lin = make_power_law(1.0, {-1, 1, -1, 1});
    auto v = twb_integral(lin, 0.0);
    const double expect = kPi + 2.0 * std::log(2.0);
    const double err = std::abs(v.value.real() - expect);
    double shift_err = 0.0;
    for (double t : {0.3, 1.7}) {
        DilatationField moved = lin;
        moved.eval = [t, base = lin.eval](Complex z) { return base(z + t); };
        moved.support_box = {lin.support_box.x0 - t, lin.support_box.x1 - t,
                             lin.support_box.y0, lin.support_box.y1};
        shift_err = std::max(shift_err,
                             std::abs(twb_integral(lin, t).value -
                                      twb_integral(moved, 0.0).value));
    }
    return {v.kind == VerdictKind::Convergent && err < 1e-5 &&
                shift_err < 1e-6,
            "value err " + fmt(err) + ", shift err " + fmt(shift_err)};
}

std::pair<bool, std::string> c4_prop1_sweep() {
    auto lin = make_power_law(1.0, {-1, 1, -1, 1});
    auto v0 = prop1_integral(lin, 0.0);
    const double expect = 8.0 * std::log(1.0 + std::sqrt(2.0));
    const double err = std::abs(v0.value.real() - expect);
    double sup = 0.0;
    bool all_conv = v0.kind == VerdictKind::Convergent;
    for (double a : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 10.0}) {
        auto v = prop1_integral(lin, a);
        all_conv = all_conv && v.kind == VerdictKind::Convergent;
        sup = std::max(sup, std::abs(v.value));
    }
    return {all_conv && err < 1e-5 && sup <= 2.0 * std::abs(v0.value),
            "a=0 err " + fmt(err) + ", sweep sup " + fmt(sup)};
}

std::pair<bool, std::string> c5_cauchy_plemelj() {
    auto circle = ParametrizedCurve::unit_circle();
    Density one{[](double) { return Complex{1, 0}; }, -kPi, kPi, 1.0};
    double t_err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Complex inside = std::polar(0.08 * (i + 1), 0.6 * i);
        const Complex outside = std::polar(1.3 + 0.2 * i, 0.4 * i);
        t_err = std::max(t_err, std::abs(cauchy_transform(circle, one, inside)
                                         - Complex{1, 0}));
        t_err = std::max(t_err,
                         std::abs(cauchy_transform(circle, one, outside)));
    }
    double j_err = 0.0;
    std::vector<Density> densities{
        one,
        {[](double s) { return std::polar(1.0, s); }, -kPi, kPi, 1.0},
        {[](double s) { return std::polar(1.0, 2 * s); }, -kPi, kPi, 1.0},
        {[](double s) { return Complex{std::cos(s), 0}; }, -kPi, kPi, 1.0}};
    for (const Density& f : densities)
        for (int i = 0; i < 64; ++i) {
            const double s = -kPi + 2 * kPi * (i + 0.5) / 64.0;
            j_err = std::max(j_err,
                             std::abs(jump(circle, f, s) - f.values(s)));
        }
    auto line = ParametrizedCurve::real_line();
    Density chi{[](double s) {
                    return Complex{std::abs(s) <= 1.0 ? 1.0 : 0.0, 0.0};
                },
                -1.0, 1.0, {}};
    const double line_err =
        std::abs(cauchy_transform(line, chi, {0, 1}) - Complex{0.25, 0});
    return {t_err < 1e-8 && j_err < 1e-6 && line_err < 1e-8,
            "transform err " + fmt(t_err) + ", jump err " + fmt(j_err) +
                ", line err " + fmt(line_err)};
}

std::pair<bool, std::string> c6_whitney() {
    bool counts_ok = true;
    for (int n = 0; n <= 12; ++n) {
        auto cubes = whitney_decompose({-1, 1, -2, 2}, n);
        int cnt = 0;
        for (const auto& c : cubes) {
            if (c.dist_to_line() != c.side) counts_ok = false;
            if (c.generation == n && c.half_plane > 0) ++cnt;
        }
        if (cnt != (1 << (n + 1))) counts_ok = false;
    }
    auto cubes = whitney_decompose({-1, 1, 0, 1}, 12);
    double area = 0.0;
    bool disjoint = true;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const Rect a = cubes[i].bounds();
        area += a.area();
        for (std::size_t j = i + 1; j < cubes.size(); ++j) {
            const Rect b = cubes[j].bounds();
            if (std::min(a.x1, b.x1) - std::max(a.x0, b.x0) > 1e-12 &&
                std::min(a.y1, b.y1) - std::max(a.y0, b.y0) > 1e-12)
                disjoint = false;
        }
    }
    const double cover_err =
        std::abs(area - 2.0 * (1.0 - std::ldexp(1.0, -12)));
    return {counts_ok && disjoint && cover_err < 1e-12,
            std::string("counts ") + (counts_ok ? "ok" : "BAD") +
                ", coverage err " + fmt(cover_err)};
}

std::pair<bool, std::string> c7_semmes_cross_validation() {
    const Density f = make_bump_density();
    double worst = 0.0;
    for (double eps : {0.05, 0.01}) {
        auto rho = make_bump_perturbation(eps);
        for (int k = 0; k < 20; ++k) {
            const Complex z0 = std::polar(1.5, kPi * (k + 0.5) / 20.0);
            const Complex hd = H_direct(rho, f, z0);
            const Complex hf = H_via_formula(rho, f, z0);
            worst = std::max(worst, std::abs(hd - hf));
        }
    }
    double id_sup = 0.0;
    for (int k = 0; k < 5; ++k) {
        const Complex z0 = std::polar(1.5, kPi * (k + 0.5) / 5.0);
        id_sup = std::max(id_sup,
                          std::abs(H_direct(make_identity_map(), f, z0)));
        id_sup = std::max(
            id_sup, std::abs(H_via_formula(make_identity_map(), f, z0)));
    }
    return {worst < 1e-4 && id_sup < 1e-10,
            "max gap " + fmt(worst) + ", identity sup " + fmt(id_sup)};
}

std::pair<bool, std::string> c8_lemma1_vanishing() {
    auto half = make_power_law(0.5, {-1, 1, -1, 1});
    auto f34 = make_power_law(0.75, {-1, 1, -1, 1});
    bool rate_ok = true;
    double prev = lemma1_bounds(half, 0.5, Lemma1Mode::cond1);
    for (double l : {0.25, 0.125, 0.0625}) {
        const double cur = lemma1_bounds(half, l, Lemma1Mode::cond1);
        const double ratio = cur / prev;
        // 2^{-1/2} modulo the slowly varying log factor
        if (!(ratio > std::pow(2.0, -0.5) - 0.08 &&
              ratio < std::pow(2.0, -0.5) + 0.20))
            rate_ok = false;
        prev = cur;
    }
    double worst_c2 = 0.0;
    prev = lemma1_bounds(f34, 0.5, Lemma1Mode::cond2);
    for (double l : {0.25, 0.125, 0.0625}) {
        const double cur = lemma1_bounds(f34, l, Lemma1Mode::cond2);
        worst_c2 = std::max(worst_c2,
                            std::abs(cur / prev - std::pow(2.0, -0.25)));
        prev = cur;
    }
    bool solver_ok = true;
    for (double delta : {0.1, 0.01}) {
        const double l1 = find_lq(half, delta, Lemma1Mode::cond1);
        if (!(lemma1_bounds(half, l1, Lemma1Mode::cond1) <= delta / 2))
            solver_ok = false;
        const double l2 = find_lq(f34, delta, Lemma1Mode::cond2);
        if (!(lemma1_bounds(f34, l2, Lemma1Mode::cond2) <= delta / 2))
            solver_ok = false;
    }
    return {rate_ok && worst_c2 < 0.05 * std::pow(2.0, -0.25) && solver_ok,
            std::string("cond1 rate ") + (rate_ok ? "ok" : "BAD") +
                ", cond2 rate dev " + fmt(worst_c2) + ", solver " +
                (solver_ok ? "ok" : "BAD")};
}

std::pair<bool, std::string> c9_section5_dossier() {
    const Section5Map m = section5::build();
    const double becker = section5::becker_criterion(m, 100);
    bool ok = becker <= 1.0 + 1e-9;
    std::string detail = "becker " + fmt(becker);

    std::vector<double> radii;
    for (int k = 3; k <= 40; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));
    const double tail = section5::limsup_ratio(m, radii);
    ok = ok && tail < 1.0;
    detail += ", limsup tail " + fmt(tail);

    std::vector<Complex> probes;
    for (double r : {1.02, 1.05, 1.08})
        for (double th : {0.0, 1.0, -2.0}) probes.push_back(std::polar(r, th));
    const double werr = wirtinger_check(m.extension, probes, 1e-6);
    ok = ok && werr < 1e-4;
    detail += ", fd err " + fmt(werr);

    double norm_lo = 1e9, norm_hi = 0.0;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double sig = section5::sigma_radial(m, 1.0 + d);
        const double norm =
            sig * std::pow(std::log(1.0 / d), 2) / std::sqrt(d);
        norm_lo = std::min(norm_lo, norm);
        norm_hi = std::max(norm_hi, norm);
    }
    ok = ok && norm_lo > 1.0 && norm_hi < 2.5;
    detail += ", sigma bracket [" + fmt(norm_lo) + "," + fmt(norm_hi) + "]";

    const IntegralVerdict c2v = section5::condition2_check(m);
    const IntegralVerdict dini = section5::dini_failure_check(m);
    ok = ok && c2v.kind == VerdictKind::Convergent &&
         dini.kind == VerdictKind::Divergent;
    detail += ", cond2 " + to_string(c2v.kind) + ", dini " +
              to_string(dini.kind);

    double w_lo = 1e9, w_hi = 0.0;
    for (double t : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double w = section5::omega_fprime(m, t) * std::log(1.0 / t);
        w_lo = std::min(w_lo, w);
        w_hi = std::max(w_hi, w);
    }
    ok = ok && w_lo > 0.05 && w_hi < 0.0999;
    detail += ", omega bracket [" + fmt(w_lo) + "," + fmt(w_hi) + "]";
    return {ok, detail};
}

std::pair<bool, std::string> c10_reverse_holder() {
    const Rect Q{-0.5, 0.5, 0.25, 0.75};
    double id_dev = 0.0;
    for (double p : {1.5, 2.0, 4.0}) {
        id_dev = std::max(id_dev,
                          std::abs(reverse_holder_ratio(make_identity_map(),
                                                        Q, p) -
                                   1.0));
        id_dev = std::max(
            id_dev, std::abs(reverse_holder_ratio(
                                 make_affine_map({1.5, 0.5}, {2, 0}), Q, p) -
                             1.0));
    }
    double min_ratio = 1e9;
    for (double eps : {0.1, 0.3})
        min_ratio = std::min(min_ratio,
                             reverse_holder_ratio(
                                 make_bump_perturbation(eps), Q, 2.0));
    min_ratio = std::min(
        min_ratio,
        reverse_holder_ratio(section5::build().extension,
                             {1.01, 1.06, 0.01, 0.04}, 2.0));
    return {id_dev < 1e-12 && min_ratio >= 1.0,
            "identity dev " + fmt(id_dev) + ", min ratio " + fmt(min_ratio)};
}

std::pair<bool, std::string> c11_determinism() {
    // Heavy mixed workload executed twice, serial and parallel; the
    // serialized reports must agree byte for byte.
    auto render = [](ExecPolicy exec) {
        set_default_exec_policy(exec);
        std::string s;
        auto add = [&s](double v) {
            char buf[32];
            std::memcpy(buf, &v, sizeof v);
            s.append(buf, sizeof v);
        };
        auto v = integrate_2d(
            [](Complex z) {
                return Complex{std::sin(30 * z.real()) *
                                   std::cos(17 * z.imag()),
                               z.real() * z.imag()};
            },
            {-1, 1, -1, 1}, {1e-8, 1e-10, 30'000'000, exec});
        add(v.value.real());
        add(v.value.imag());
        add(v.abs_error);
        auto rep = full_report(make_power_law(0.75, {-1, 1, -1, 1}));
        add(rep.condition1.value.real());
        add(rep.condition2.value.real());
        add(rep.condition3_ratio.value_or(-1));
        add(rep.twb_sup_over_t.value_or(-1));
        add(rep.prop1_sup_over_a.value_or(-1));
        add(section5::becker_criterion(section5::build(), 120, exec));
        return s;
    };
    const std::string a = render(ExecPolicy::serial);
    const std::string b = render(ExecPolicy::parallel);
    const std::string c = render(ExecPolicy::parallel);
    set_default_exec_policy(ExecPolicy::parallel);
    return {a == b && b == c,
            a == b ? "serial/parallel reports byte-identical"
                   : "MISMATCH between serial and parallel reports"};
}

}  // namespace

int main() {
    run(1, "condition-1 closed form", c1_condition1_closed_form);
    run(2, "condition-2 closed form", c2_condition2_closed_form);
    run(3, "distortion-integral closed form", c3_twb_closed_form);
    run(4, "boundary-kernel sweep", c4_prop1_sweep);
    run(5, "transform and jump recovery", c5_cauchy_plemelj);
    run(6, "dyadic cube tiling", c6_whitney);
    run(7, "area-formula cross-validation", c7_semmes_cross_validation);
    run(8, "truncated-bound vanishing", c8_lemma1_vanishing);
    run(9, "smooth-not-Dini dossier", c9_section5_dossier);
    run(10, "reverse Holder diagnostic", c10_reverse_holder);
    run(11, "deterministic reports", c11_determinism);
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
