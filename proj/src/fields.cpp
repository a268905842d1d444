#include "qcs/fields.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "qcs/errors.hpp"

namespace qcs {

DilatationField make_zero() {
    DilatationField f;
    f.eval = [](Complex) { return Complex{0.0, 0.0}; };
    return f;
}

DilatationField make_constant(double k, Rect box) {
    DilatationField f;
    f.eval = [k, box](Complex z) {
        return box.contains(z) ? Complex{k, 0.0} : Complex{0.0, 0.0};
    };
    f.support_box = box;
    f.sup_bound = std::abs(k);
    const double h = std::max(std::abs(box.y0), std::abs(box.y1));
    f.majorant_hint = [k, h](double t) {
        return t > 0 && h > 0 ? std::abs(k) : 0.0;
    };
    return f;
}

DilatationField make_power_law(double alpha, Rect box) {
    DilatationField f;
    f.eval = [alpha, box](Complex z) {
        if (!box.contains(z)) return Complex{0.0, 0.0};
        const double d = std::abs(z.imag());
        return Complex{d > 0 || alpha <= 0 ? std::pow(d, alpha) : 0.0, 0.0};
    };
    f.support_box = box;
    const double h = std::max(std::abs(box.y0), std::abs(box.y1));
    f.sup_bound = std::pow(h, alpha);
    f.majorant_hint = [alpha, h](double t) {
        return std::pow(std::min(std::abs(t), h), alpha);
    };
    return f;
}

namespace {

struct Grid {
    std::vector<double> xs, ys;           // strictly increasing
    std::vector<std::vector<Complex>> v;  // v[iy][ix]
};

Grid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("csv_grid: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw DomainError("csv_grid: empty file");
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    if (strip(line) != "re,im,mu_re,mu_im")
        throw DomainError("csv_grid: expected header re,im,mu_re,mu_im");
    struct Row {
        double x, y;
        Complex m;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        std::istringstream s2(line);
        std::string tok;
        double vals[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(s2, tok, ','))
                throw DomainError("csv_grid: short row: " + line);
            vals[i] = std::stod(tok);
        }
        rows.push_back({vals[0], vals[1], {vals[2], vals[3]}});
    }
    if (rows.empty()) throw DomainError("csv_grid: no data rows");
    Grid g;
    for (const Row& r : rows) {
        g.xs.push_back(r.x);
        g.ys.push_back(r.y);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(g.xs);
    uniq(g.ys);
    if (g.xs.size() * g.ys.size() != rows.size())
        throw DomainError("csv_grid: rows do not form a full grid");
    g.v.assign(g.ys.size(), std::vector<Complex>(g.xs.size()));
    for (const Row& r : rows) {
        const auto ix = static_cast<std::size_t>(
            std::lower_bound(g.xs.begin(), g.xs.end(), r.x) - g.xs.begin());
        const auto iy = static_cast<std::size_t>(
            std::lower_bound(g.ys.begin(), g.ys.end(), r.y) - g.ys.begin());
        g.v[iy][ix] = r.m;
    }
    return g;
}

Complex bilinear(const Grid& g, Complex z) {
    const double x = z.real(), y = z.imag();
    if (x < g.xs.front() || x > g.xs.back() || y < g.ys.front() ||
        y > g.ys.back())
        return {0.0, 0.0};
    auto cell = [](const std::vector<double>& a, double t) {
        auto it = std::upper_bound(a.begin(), a.end(), t);
        std::size_t i = static_cast<std::size_t>(it - a.begin());
        if (i == 0) i = 1;
        if (i == a.size()) i = a.size() - 1;
        return i - 1;
    };
    const std::size_t ix = cell(g.xs, x), iy = cell(g.ys, y);
    const double tx = g.xs[ix + 1] > g.xs[ix]
                          ? (x - g.xs[ix]) / (g.xs[ix + 1] - g.xs[ix])
                          : 0.0;
    const double ty = g.ys[iy + 1] > g.ys[iy]
                          ? (y - g.ys[iy]) / (g.ys[iy + 1] - g.ys[iy])
                          : 0.0;
    return (1 - ty) * ((1 - tx) * g.v[iy][ix] + tx * g.v[iy][ix + 1]) +
           ty * ((1 - tx) * g.v[iy + 1][ix] + tx * g.v[iy + 1][ix + 1]);
}

}  // namespace

DilatationField make_csv_grid(const std::string& path, Rect box) {
    auto grid = std::make_shared<Grid>(load_grid(path));
    DilatationField f;
    if (box.area() == 0)
        box = {grid->xs.front(), grid->xs.back(), grid->ys.front(),
               grid->ys.back()};
    f.eval = [grid, box](Complex z) {
        return box.contains(z) ? bilinear(*grid, z) : Complex{0.0, 0.0};
    };
    f.support_box = box;
    double m = 0.0;
    for (const auto& row : grid->v)
        for (Complex c : row) m = std::max(m, std::abs(c));
    f.sup_bound = m;
    return f;
}

DilatationField parse_field_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    const Rect default_box{-1.0, 1.0, -1.0, 1.0};
    if (name == "zero") return make_zero();
    if (name == "section5") return make_section5();
    try {
        if (name == "constant")
            return make_constant(std::stod(arg), default_box);
        if (name == "power_law")
            return make_power_law(std::stod(arg), default_box);
    } catch (const std::exception&) {
        throw DomainError("field spec: bad numeric parameter in " + spec);
    }
    if (name == "csv_grid") {
        if (arg.empty()) throw DomainError("field spec: csv_grid needs a path");
        return make_csv_grid(arg, {0, 0, 0, 0});
    }
    throw DomainError("field spec: unknown family " + name);
}

}  // namespace qcs
