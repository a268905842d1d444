#pragma once
#include <functional>
#include <vector>

#include "qcs/quadrature.hpp"

namespace qcs {

// Dyadic Whitney cube for the complement of the real line. A generation-g
// cube has side 2^-g and vertical extent [side, 2*side) in |Im z|, so its
// distance to the line equals its side exactly.
struct WhitneyCube {
    Complex center;
    double side = 1.0;
    int generation = 0;
    int half_plane = +1;  // +1 upper, -1 lower
    long column = 0;      // x-range is [column*side, (column+1)*side)

    double dist_to_line() const { return side; }
    Rect bounds() const {
        const double x = static_cast<double>(column) * side;
        const double ylo = half_plane > 0 ? side : -2 * side;
        return {x, x + side, ylo, ylo + side};
    }
};

// Cubes of generation 0..max_generation whose interiors meet the strip
// (after clipping the strip against the real line). Covers
// strip ∩ {2^-max_generation <= |Im z|}.
std::vector<WhitneyCube> whitney_decompose(Rect strip, int max_generation);

// The unique Whitney cube containing z (Im z != 0).
WhitneyCube cube_containing(Complex z);

struct ParametrizedCurve {
    enum class Domain { real_line, unit_circle } domain;
    std::function<Complex(double)> point;
    std::function<Complex(double)> d1;
    std::function<Complex(double)> d2;

    static ParametrizedCurve real_line();
    static ParametrizedCurve unit_circle();
};

// min |γ(s) - w| over the parameter window, by coarse grid plus golden
// section refinement around the best bracket.
double distance_to_curve(const ParametrizedCurve& curve, Complex w,
                         double window_lo, double window_hi,
                         int coarse_n = 1024);

struct ModulusOptions {
    int coarse_n = 2048;
    int refine_iters = 60;
    int refine_samples = 33;
};

// sup |f(x1) - f(x2)| over |x1 - x2| <= delta inside the window. Sampled
// estimate (a lower bound): coarse pair scan followed by shrinking local
// refinement around the worst pair.
double modulus_of_continuity(const std::function<Complex(double)>& f,
                             double delta, double window_lo, double window_hi,
                             ModulusOptions opt = {});

// Dini test: dyadic verdict for ∫_0^outer ω(t)/t dt.
IntegralVerdict dini_verdict(const std::function<double(double)>& omega,
                             double outer, double floor = 0.0,
                             DyadicOptions opt = {});

// Max jump of the normalized tangent d1/|d1| between adjacent grid points.
double tangent_continuity_check(const ParametrizedCurve& curve,
                                double window_lo, double window_hi, int n);

}  // namespace qcs
