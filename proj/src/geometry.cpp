#include "qcs/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qcs {

std::vector<WhitneyCube> whitney_decompose(Rect strip, int max_generation) {
    if (max_generation < 0 || max_generation > 40)
        throw DomainError("whitney_decompose: generation out of range");
    std::vector<WhitneyCube> cubes;
    for (int sign : {+1, -1}) {
        // |Im z| range of this half of the strip, clipped against the line.
        const double alo =
            std::max(0.0, sign > 0 ? strip.y0 : -strip.y1);
        const double ahi = sign > 0 ? strip.y1 : -strip.y0;
        if (!(ahi > alo) || !(ahi > 0)) continue;
        for (int g = 0; g <= max_generation; ++g) {
            const double side = std::ldexp(1.0, -g);
            const double row_lo = side, row_hi = 2 * side;  // |Im z| range
            if (row_lo >= ahi || row_hi <= alo) continue;
            const long j0 =
                static_cast<long>(std::floor(strip.x0 / side));
            const long j1 =
                static_cast<long>(std::ceil(strip.x1 / side)) - 1;
            for (long j = j0; j <= j1; ++j) {
                if ((j + 1) * side <= strip.x0 || j * side >= strip.x1)
                    continue;
                WhitneyCube c;
                c.side = side;
                c.generation = g;
                c.half_plane = sign;
                c.column = j;
                c.center = {(j + 0.5) * side, sign * 1.5 * side};
                cubes.push_back(c);
            }
        }
    }
    return cubes;
}

WhitneyCube cube_containing(Complex z) {
    const double y = z.imag();
    if (y == 0.0) throw DomainError("cube_containing: point on the real line");
    int e;
    std::frexp(std::abs(y), &e);  // |y| in [2^(e-1), 2^e)
    WhitneyCube c;
    c.generation = 1 - e;
    c.side = std::ldexp(1.0, e - 1);
    c.half_plane = y > 0 ? +1 : -1;
    c.column = static_cast<long>(std::floor(z.real() / c.side));
    c.center = {(c.column + 0.5) * c.side, c.half_plane * 1.5 * c.side};
    return c;
}

ParametrizedCurve ParametrizedCurve::real_line() {
    ParametrizedCurve c;
    c.domain = Domain::real_line;
    c.point = [](double s) { return Complex{s, 0.0}; };
    c.d1 = [](double) { return Complex{1.0, 0.0}; };
    c.d2 = [](double) { return Complex{0.0, 0.0}; };
    return c;
}

ParametrizedCurve ParametrizedCurve::unit_circle() {
    ParametrizedCurve c;
    c.domain = Domain::unit_circle;
    c.point = [](double s) { return std::polar(1.0, s); };
    c.d1 = [](double s) { return Complex{0, 1} * std::polar(1.0, s); };
    c.d2 = [](double s) { return -std::polar(1.0, s); };
    return c;
}

double distance_to_curve(const ParametrizedCurve& curve, Complex w,
                         double lo, double hi, int coarse_n) {
    if (!(hi > lo)) throw DomainError("distance_to_curve: empty window");
    auto d2f = [&](double s) { return std::norm(curve.point(s) - w); };
    int best = 0;
    double bestv = HUGE_VAL;
    for (int i = 0; i <= coarse_n; ++i) {
        const double s = lo + (hi - lo) * i / coarse_n;
        const double v = d2f(s);
        if (v < bestv) {
            bestv = v;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / coarse_n;
    double b = lo + (hi - lo) * std::min(coarse_n, best + 1) / coarse_n;
    // Golden-section on the bracket.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = d2f(x1), f2 = d2f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * (1 + std::abs(a)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = d2f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = d2f(x2);
        }
    }
    return std::sqrt(std::min({bestv, f1, f2}));
}

double modulus_of_continuity(const std::function<Complex(double)>& f,
                             double delta, double lo, double hi,
                             ModulusOptions opt) {
    if (!(delta > 0)) throw DomainError("modulus_of_continuity: delta <= 0");
    if (!(hi - lo >= delta))
        throw DomainError("modulus_of_continuity: window shorter than delta");
    double best = 0.0, best_x = lo;
    auto consider = [&](double x) {
        if (x < lo || x + delta > hi) return;
        const double v = std::abs(f(x + delta) - f(x));
        if (v > best) {
            best = v;
            best_x = x;
        }
    };
    for (int i = 0; i <= opt.coarse_n; ++i)
        consider(lo + (hi - lo - delta) * i / opt.coarse_n);
    // Anchors where curvature often concentrates.
    for (double a : {0.0, -delta, -0.5 * delta, 0.5 * delta, delta})
        consider(a);
    // Shrinking local search around the best left endpoint.
    double radius = (hi - lo) / opt.coarse_n;
    for (int it = 0; it < opt.refine_iters; ++it) {
        const double cx = best_x;
        for (int i = 0; i < opt.refine_samples; ++i) {
            const double x =
                cx - radius + 2 * radius * i / (opt.refine_samples - 1);
            consider(x);
        }
        radius *= 0.5;
        if (radius < 1e-18 * (1 + std::abs(best_x))) break;
    }
    return best;
}

IntegralVerdict dini_verdict(const std::function<double(double)>& omega,
                             double outer, double floor, DyadicOptions opt) {
    opt.floor = std::max(opt.floor, floor);
    return improper_dyadic(
        [&](double t) { return Complex{omega(t) / t, 0.0}; }, 0.0, outer,
        opt);
}

double tangent_continuity_check(const ParametrizedCurve& curve, double lo,
                                double hi, int n) {
    if (n < 2) throw DomainError("tangent_continuity_check: grid too small");
    double max_jump = 0.0;
    Complex prev;
    for (int i = 0; i <= n; ++i) {
        const double s = lo + (hi - lo) * i / n;
        const Complex d = curve.d1(s);
        const double m = std::abs(d);
        if (m < 1e-14)
            throw DomainError("tangent_continuity_check: zero derivative");
        const Complex t = d / m;
        if (i > 0) max_jump = std::max(max_jump, std::abs(t - prev));
        prev = t;
    }
    return max_jump;
}

}  // namespace qcs
