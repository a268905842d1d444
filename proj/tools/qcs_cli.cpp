#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcs/cauchy.hpp"
#include "qcs/dilatation.hpp"
#include "qcs/errors.hpp"
#include "qcs/example5.hpp"
#include "qcs/fields.hpp"
#include "qcs/geometry.hpp"
#include "qcs/semmes.hpp"

using json = nlohmann::ordered_json;
using namespace qcs;

namespace {

constexpr int kSchemaVersion = 1;

json verdict_json(const IntegralVerdict& v) {
    json trace = json::array();
    for (const ShellTerm& s : v.dyadic_trace)
        trace.push_back({{"k", s.k},
                         {"lo", s.lo},
                         {"hi", s.hi},
                         {"term_re", s.term.real()},
                         {"term_im", s.term.imag()}});
    return {{"kind", to_string(v.kind)},
            {"value_re", v.value.real()},
            {"value_im", v.value.imag()},
            {"abs_error", v.abs_error},
            {"note", v.note},
            {"trace", trace}};
}

void emit(const json& report, const std::string& out_dir,
          const std::string& name) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(out_dir + "/" + name);
        f << text;
    }
}

int run_conditions(const std::string& field_spec, double tol,
                   const std::string& out_dir) {
    DilatationField mu = parse_field_spec(field_spec);
    ReportParams params;
    params.dyadic.tol = tol;
    ConditionReport rep = full_report(mu, params);
    json j{{"schema_version", kSchemaVersion},
           {"command", "conditions"},
           {"field", field_spec},
           {"condition1", verdict_json(rep.condition1)},
           {"condition2", verdict_json(rep.condition2)},
           {"condition3_ratio",
            rep.condition3_ratio ? json(*rep.condition3_ratio) : json()},
           {"twb_sup_over_t",
            rep.twb_sup_over_t ? json(*rep.twb_sup_over_t) : json()},
           {"prop1_sup_over_a",
            rep.prop1_sup_over_a ? json(*rep.prop1_sup_over_a) : json()},
           {"admissible", rep.admissible},
           {"summary", rep.summary}};
    emit(j, out_dir, "conditions.json");
    return rep.admissible ? 0 : 2;
}

int run_twb(const std::string& field_spec, std::vector<double> shifts,
            const std::string& out_dir) {
    DilatationField mu = parse_field_spec(field_spec);
    if (shifts.empty()) shifts = {0.0};
    json items = json::array();
    bool all_conv = true;
    for (double t : shifts) {
        IntegralVerdict v = twb_integral(mu, t);
        all_conv = all_conv && v.convergent();
        items.push_back({{"t", t}, {"verdict", verdict_json(v)}});
    }
    json j{{"schema_version", kSchemaVersion},
           {"command", "twb"},
           {"field", field_spec},
           {"shifts", items}};
    emit(j, out_dir, "twb.json");
    return all_conv ? 0 : 2;
}

int run_cauchy(const std::string& curve_name, int n_probes,
               const std::string& out_dir) {
    ParametrizedCurve curve;
    Density f;
    if (curve_name == "circle") {
        curve = ParametrizedCurve::unit_circle();
        f.values = [](double) { return Complex{1.0, 0.0}; };
        f.support_lo = -3.15;
        f.support_hi = 3.15;
    } else if (curve_name == "line") {
        curve = ParametrizedCurve::real_line();
        f.values = [](double s) {
            return Complex{std::abs(s) <= 1.0 ? 1.0 : 0.0, 0.0};
        };
        f.support_lo = -1.0;
        f.support_hi = 1.0;
    } else {
        throw DomainError("cauchy: curve must be 'line' or 'circle'");
    }
    json probes = json::array();
    for (int i = 0; i < n_probes; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * (i + 0.5) / n_probes;
        const Complex z = Complex{0.0, 0.3} + std::polar(2.0, a);
        const Complex v = cauchy_transform(curve, f, z);
        probes.push_back({{"z_re", z.real()},
                          {"z_im", z.imag()},
                          {"value_re", v.real()},
                          {"value_im", v.imag()}});
    }
    double worst_jump = 0.0;
    json jumps = json::array();
    for (int i = 0; i < 16; ++i) {
        const double s = curve_name == "circle"
                             ? -3.0 + 6.0 * (i + 0.5) / 16.0
                             : -0.9 + 1.8 * (i + 0.5) / 16.0;
        const Complex jv = jump(curve, f, s);
        const double err = std::abs(jv - f.values(s));
        worst_jump = std::max(worst_jump, err);
        jumps.push_back({{"s", s}, {"jump_error", err}});
    }
    json j{{"schema_version", kSchemaVersion},
           {"command", "cauchy"},
           {"curve", curve_name},
           {"probes", probes},
           {"jump_samples", jumps},
           {"max_jump_error", worst_jump}};
    emit(j, out_dir, "cauchy.json");
    return worst_jump < 1e-6 ? 0 : 2;
}

int run_whitney(double x0, double x1, double y0, double y1, int max_gen,
                const std::string& out_dir, const std::string& format) {
    auto cubes = whitney_decompose({x0, x1, y0, y1}, max_gen);
    if (format == "csv") {
        std::string csv = "center_re,center_im,side,generation,half_plane\n";
        for (const auto& c : cubes) {
            csv += std::to_string(c.center.real()) + "," +
                   std::to_string(c.center.imag()) + "," +
                   std::to_string(c.side) + "," +
                   std::to_string(c.generation) + "," +
                   std::to_string(c.half_plane) + "\n";
        }
        std::cout << csv;
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::ofstream f(out_dir + "/whitney.csv");
            f << csv;
        }
        return 0;
    }
    json items = json::array();
    for (const auto& c : cubes)
        items.push_back({{"center_re", c.center.real()},
                         {"center_im", c.center.imag()},
                         {"side", c.side},
                         {"generation", c.generation},
                         {"half_plane", c.half_plane}});
    json j{{"schema_version", kSchemaVersion},
           {"command", "whitney"},
           {"count", cubes.size()},
           {"cubes", items}};
    emit(j, out_dir, "whitney.json");
    return 0;
}

int run_theorem1(double eps, int n_probes, const std::string& out_dir) {
    ExplicitQCMap rho = make_admissible_bump(eps);
    Density f = make_bump_density();
    std::vector<Complex> line_probes, plane_probes;
    for (int k = 0; k < n_probes; ++k) {
        line_probes.push_back({-0.8 + 1.6 * k / std::max(1, n_probes - 1),
                               0.02});
        const double th = 3.14159265358979323846 * (k + 0.5) / n_probes;
        plane_probes.push_back(std::polar(1.5, th));
    }
    Theorem1Report rep = theorem1_report(rho, f, line_probes, plane_probes);
    json probes = json::array();
    for (const auto& r : rep.plane_records)
        probes.push_back({{"z_re", r.z0.real()},
                          {"z_im", r.z0.imag()},
                          {"H_direct_re", r.direct.real()},
                          {"H_direct_im", r.direct.imag()},
                          {"H_formula_re", r.formula->real()},
                          {"H_formula_im", r.formula->imag()},
                          {"gap", r.gap}});
    json j{{"schema_version", kSchemaVersion},
           {"command", "theorem1"},
           {"eps", eps},
           {"sup_H_on_line", rep.sup_H_on_line},
           {"sup_H_off_line", rep.sup_H_off_line},
           {"eq7_vs_direct_max_gap", rep.eq7_vs_direct_max_gap},
           {"bound_from_conditions", rep.bound_from_conditions},
           {"consistent", rep.consistent},
           {"note", rep.note},
           {"probes", probes}};
    emit(j, out_dir, "theorem1.json");
    return rep.consistent ? 0 : 2;
}

int run_example5(const std::string& out_dir) {
    const Section5Map map = section5::build();
    const double becker = section5::becker_criterion(map);
    std::vector<double> radii;
    for (int k = 3; k <= 30; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));
    const double limsup = section5::limsup_ratio(map, radii);
    json sigma = json::array();
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double s = section5::sigma_radial(map, 1.0 + d);
        const double norm =
            s * std::pow(std::log(1.0 / d), 2) / std::sqrt(d);
        sigma.push_back({{"r_minus_1", d}, {"sigma", s}, {"normalized", norm}});
    }
    IntegralVerdict c2 = section5::condition2_check(map);
    IntegralVerdict dini = section5::dini_failure_check(map);
    json omega = json::array();
    for (double t : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double w = section5::omega_fprime(map, t);
        omega.push_back(
            {{"t", t}, {"omega", w}, {"omega_times_log", w * std::log(1 / t)}});
    }
    ParametrizedCurve gamma = section5::boundary_curve(map);
    json tangent = json::array();
    for (int n : {256, 1024, 4096})
        tangent.push_back(
            {{"n", n},
             {"max_tangent_jump",
              tangent_continuity_check(gamma, -3.14159, 3.14159, n)}});
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(out_dir + "/gamma.csv");
        f << "s,re,im\n";
        for (int i = 0; i <= 2048; ++i) {
            const double s =
                -3.14159265358979323846 +
                2 * 3.14159265358979323846 * i / 2048.0;
            const Complex z = gamma.point(s);
            f << s << "," << z.real() << "," << z.imag() << "\n";
        }
    }
    json j{{"schema_version", kSchemaVersion},
           {"command", "example5"},
           {"becker_sup", becker},
           {"limsup_tail_max", limsup},
           {"sigma_sweep", sigma},
           {"condition2", verdict_json(c2)},
           {"dini", verdict_json(dini)},
           {"omega_sweep", omega},
           {"tangent_continuity", tangent}};
    emit(j, out_dir, "example5.json");
    return c2.convergent() && dini.kind == VerdictKind::Divergent ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasicircle smoothness diagnostics"};
    app.require_subcommand(1);

    std::string field_spec = "zero", out_dir, format = "json";
    std::string curve_name = "circle";
    double tol = 1e-8, eps = 0.01;
    int n_probes = 10;
    std::vector<double> shifts;
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    int max_gen = 8;
    bool all = false;

    auto* conditions = app.add_subcommand("conditions", "condition report");
    conditions->add_option("--field", field_spec);
    conditions->add_option("--tol", tol);
    conditions->add_option("--out", out_dir);
    conditions->add_option("--format", format);

    auto* twb = app.add_subcommand("twb", "distortion integral verdicts");
    twb->add_option("--field", field_spec);
    twb->add_option("--shift", shifts);
    twb->add_option("--out", out_dir);

    auto* cauchy = app.add_subcommand("cauchy", "transform and jump probes");
    cauchy->add_option("--curve", curve_name);
    cauchy->add_option("--probes", n_probes);
    cauchy->add_option("--out", out_dir);

    auto* whitney = app.add_subcommand("whitney", "dyadic cube dump");
    whitney->add_option("--x0", x0);
    whitney->add_option("--x1", x1);
    whitney->add_option("--y0", y0);
    whitney->add_option("--y1", y1);
    whitney->add_option("--max-gen", max_gen);
    whitney->add_option("--out", out_dir);
    whitney->add_option("--format", format);

    auto* thm1 = app.add_subcommand("theorem1", "pullback identity report");
    thm1->add_option("--eps", eps);
    thm1->add_option("--probes", n_probes);
    thm1->add_option("--out", out_dir);

    auto* ex5 = app.add_subcommand("example5", "smooth-not-Dini dossier");
    ex5->add_flag("--all", all);
    ex5->add_option("--out", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (conditions->parsed())
            return run_conditions(field_spec, tol, out_dir);
        if (twb->parsed()) return run_twb(field_spec, shifts, out_dir);
        if (cauchy->parsed())
            return run_cauchy(curve_name, n_probes, out_dir);
        if (whitney->parsed())
            return run_whitney(x0, x1, y0, y1, max_gen, out_dir, format);
        if (thm1->parsed()) return run_theorem1(eps, n_probes, out_dir);
        if (ex5->parsed()) return run_example5(out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
