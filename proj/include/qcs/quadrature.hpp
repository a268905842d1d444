#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qcs/errors.hpp"
#include "qcs/parallel.hpp"

namespace qcs {

using Complex = std::complex<double>;
using RealFn = std::function<Complex(double)>;
using PlaneFn = std::function<Complex(Complex)>;

struct Rect {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
    bool contains(Complex z) const { return contains(z.real(), z.imag()); }
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double abs_error = 0.0;     // nonnegative estimate of |value - true|
    long evaluations = 0;
    bool converged = false;     // implies abs_error <= requested tolerance
};

struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-10;
    long max_evals = 10'000'000;
    ExecPolicy exec = ExecPolicy::serial;
};

// Adaptive Gauss-Kronrod (G7,K15), deterministic bisection tree ordered by
// the per-interval error estimate. Throws NonFiniteError / BudgetExceededError.
QuadratureResult integrate_1d(const RealFn& f, double a, double b,
                              QuadratureOptions opt = {});

// Tensorized adaptive rule on rectangles; splits the longer side. Default
// tolerance is looser than 1D. Subrectangle rule evaluations may run in
// parallel; the tree and summation order are fixed.
QuadratureResult integrate_2d(const PlaneFn& f, Rect box,
                              QuadratureOptions opt = {1e-6, 1e-9, 10'000'000,
                                                       ExecPolicy::serial});

// Cauchy principal value across an interior simple pole: symmetric excision
// with eps_k = eps0 * 2^-k and polynomial (Neville) extrapolation to eps = 0.
QuadratureResult integrate_pv(const RealFn& f, double singularity, double a,
                              double b, QuadratureOptions opt = {});

enum class VerdictKind { Convergent, Divergent, Inconclusive };

struct ShellTerm {
    int k = 0;           // shell index; shell is (outer*2^-(k+1), outer*2^-k]
    double lo = 0, hi = 0;
    Complex term{0.0, 0.0};
    Complex partial{0.0, 0.0};  // running sum through this shell
};

// Verdict for an improper integral toward 0. Convergent carries the value
// (partial sum + extrapolated tail) and an error estimate. The trace is
// always populated.
struct IntegralVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    Complex value{0.0, 0.0};
    double abs_error = 0.0;
    std::vector<ShellTerm> dyadic_trace;
    std::string note;

    bool convergent() const { return kind == VerdictKind::Convergent; }
    bool divergent() const { return kind == VerdictKind::Divergent; }
};

struct DyadicOptions {
    double tol = 1e-8;
    int last_shells = 8;          // K consecutive shells used for the verdict
    double ratio_threshold = 0.9; // geometric-decay cutoff
    // Slowly decaying shells (ratio in (threshold, 1)) are classified by the
    // local exponent s of term_k ~ k^-s: Divergent below exponent_div,
    // Convergent above exponent_conv, otherwise keep subdividing.
    double exponent_div = 1.05;
    double exponent_conv = 1.20;
    int max_shells = 600;
    double floor = 0.0;           // hard lower evaluation edge (0: automatic)
    QuadratureOptions quad{0.0, 1e-10, 200'000, ExecPolicy::serial};
};

// Dyadic-shell treatment of integral_(0,outer] f(t) dt. Shell terms heading
// to 0 geometrically (or with a super-linear exponent) yield Convergent with
// an extrapolated tail; terms failing to decay yield Divergent. This is a
// heuristic verdict over the last K shells, not a proof.
IntegralVerdict improper_dyadic(const RealFn& f, double inner, double outer,
                                DyadicOptions opt = {});

std::string to_string(VerdictKind k);

}  // namespace qcs
