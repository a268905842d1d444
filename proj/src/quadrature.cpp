#include "qcs/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>

namespace qcs {
namespace {

// Gauss 7 / Kronrod 15 on [-1,1] (QUADPACK values). kXGK[7] = 0; the Gauss
// subset sits at the odd Kronrod indices.
constexpr double kXGK[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
constexpr double kWGK[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318371,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
constexpr double kWG[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

void check_finite(Complex v, double where) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteError("non-finite integrand value at " +
                             std::to_string(where));
}

struct Seg {
    double a, b;
    Complex val;
    double err;
    long id;
    bool splittable;
};

struct SegWorse {
    bool operator()(const Seg& x, const Seg& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.id > y.id;  // older interval first on ties
    }
};

Seg eval_seg_1d(const RealFn& f, double a, double b, long id) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex k15{0, 0}, g7{0, 0};
    for (int i = 0; i < 8; ++i) {
        Complex s;
        if (i == 7) {
            s = f(c);
            check_finite(s, c);
        } else {
            const double x = h * kXGK[i];
            Complex lo = f(c - x), hi = f(c + x);
            check_finite(lo, c - x);
            check_finite(hi, c + x);
            s = lo + hi;
        }
        k15 += kWGK[i] * s;
        if (i % 2 == 1) g7 += kWG[i / 2] * s;
    }
    Seg seg;
    seg.a = a;
    seg.b = b;
    seg.val = k15 * h;
    seg.err = std::abs(k15 - g7) * h;
    seg.id = id;
    // Stop splitting once the midpoint can no longer separate the endpoints.
    seg.splittable = (c > a && c < b) && (b - a) > 64 * DBL_MIN;
    return seg;
}

struct Seg2 {
    Rect r;
    Complex val;
    double err;
    long id;
    bool splittable;
};

struct Seg2Worse {
    bool operator()(const Seg2& x, const Seg2& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.id > y.id;
    }
};

Seg2 eval_seg_2d(const PlaneFn& f, Rect r, long id) {
    const double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * (r.x1 - r.x0);
    const double cy = 0.5 * (r.y0 + r.y1), hy = 0.5 * (r.y1 - r.y0);
    double xs[15], ys[15];
    for (int i = 0; i < 7; ++i) {
        xs[i] = cx - hx * kXGK[i];
        xs[14 - i] = cx + hx * kXGK[i];
        ys[i] = cy - hy * kXGK[i];
        ys[14 - i] = cy + hy * kXGK[i];
    }
    xs[7] = cx;
    ys[7] = cy;
    double wk[15], wg[15];
    for (int i = 0; i < 7; ++i) {
        wk[i] = wk[14 - i] = kWGK[i];
        wg[i] = wg[14 - i] = (i % 2 == 1) ? kWG[i / 2] : 0.0;
    }
    wk[7] = kWGK[7];
    wg[7] = kWG[3];

    Complex k{0, 0}, g{0, 0};
    for (int j = 0; j < 15; ++j) {
        Complex rowk{0, 0}, rowg{0, 0};
        for (int i = 0; i < 15; ++i) {
            Complex v = f(Complex{xs[i], ys[j]});
            check_finite(v, xs[i]);
            rowk += wk[i] * v;
            rowg += wg[i] * v;
        }
        k += wk[j] * rowk;
        g += wg[j] * rowg;
    }
    Seg2 seg;
    seg.r = r;
    seg.val = k * hx * hy;
    seg.err = std::abs(k - g) * hx * hy;
    seg.id = id;
    seg.splittable = std::max(r.width(), r.height()) > 64 * DBL_MIN;
    return seg;
}

}  // namespace

static ExecPolicy g_default_exec = ExecPolicy::parallel;
ExecPolicy default_exec_policy() { return g_default_exec; }
void set_default_exec_policy(ExecPolicy p) { g_default_exec = p; }

QuadratureResult integrate_1d(const RealFn& f, double a, double b,
                              QuadratureOptions opt) {
    if (!(a <= b)) throw DomainError("integrate_1d: requires a <= b");
    if (!(opt.abs_tol >= 0 && opt.rel_tol >= 0))
        throw DomainError("integrate_1d: negative tolerance");
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    long evals = 0, next_id = 0;
    std::priority_queue<Seg, std::vector<Seg>, SegWorse> heap;
    std::vector<Seg> done;  // unsplittable leaves
    Complex total{0, 0};
    double toterr = 0;

    auto push = [&](Seg&& s) {
        total += s.val;
        toterr += s.err;
        if (s.splittable)
            heap.push(std::move(s));
        else
            done.push_back(std::move(s));
    };
    push(eval_seg_1d(f, a, b, next_id++));
    evals += 15;

    const int wave = 8;
    while (true) {
        const double tol =
            std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= tol) {
            res.converged = true;
            break;
        }
        if (heap.empty()) break;  // only unsplittable mass left
        if (evals + 30 * wave > opt.max_evals)
            throw BudgetExceededError("integrate_1d: evaluation cap reached");
        std::vector<Seg> popped;
        for (int i = 0; i < wave && !heap.empty(); ++i) {
            popped.push_back(heap.top());
            heap.pop();
        }
        std::vector<std::pair<double, double>> halves;
        for (const Seg& s : popped) {
            total -= s.val;
            toterr -= s.err;
            const double m = 0.5 * (s.a + s.b);
            halves.emplace_back(s.a, m);
            halves.emplace_back(m, s.b);
        }
        const long base = next_id;
        next_id += static_cast<long>(halves.size());
        auto kids = parallel_map<Seg>(
            halves.size(), opt.exec, [&](std::size_t i) {
                return eval_seg_1d(f, halves[i].first, halves[i].second,
                                   base + static_cast<long>(i));
            });
        for (Seg& s : kids) {
            evals += 15;
            push(std::move(s));
        }
    }
    // Deterministic final reduction: left-to-right over the partition.
    std::vector<Seg> leaves = std::move(done);
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Seg& x, const Seg& y) { return x.a < y.a; });
    Complex v{0, 0};
    double e = 0;
    for (const Seg& s : leaves) {
        v += s.val;
        e += s.err;
    }
    res.value = v;
    res.abs_error = e;
    res.evaluations = evals;
    if (!res.converged)
        res.converged =
            e <= std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
    return res;
}

QuadratureResult integrate_2d(const PlaneFn& f, Rect box,
                              QuadratureOptions opt) {
    if (!(box.x0 <= box.x1 && box.y0 <= box.y1))
        throw DomainError("integrate_2d: malformed box");
    QuadratureResult res;
    if (box.area() == 0) {
        res.converged = true;
        return res;
    }
    long evals = 0, next_id = 0;
    std::priority_queue<Seg2, std::vector<Seg2>, Seg2Worse> heap;
    std::vector<Seg2> done;
    Complex total{0, 0};
    double toterr = 0;

    auto push = [&](Seg2&& s) {
        total += s.val;
        toterr += s.err;
        if (s.splittable)
            heap.push(std::move(s));
        else
            done.push_back(std::move(s));
    };
    push(eval_seg_2d(f, box, next_id++));
    evals += 225;

    const int wave = 8;
    while (true) {
        const double tol =
            std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= tol) {
            res.converged = true;
            break;
        }
        if (heap.empty()) break;
        if (evals + 450 * wave > opt.max_evals)
            throw BudgetExceededError("integrate_2d: evaluation cap reached");
        std::vector<Seg2> popped;
        for (int i = 0; i < wave && !heap.empty(); ++i) {
            popped.push_back(heap.top());
            heap.pop();
        }
        std::vector<Rect> halves;
        for (const Seg2& s : popped) {
            total -= s.val;
            toterr -= s.err;
            const Rect& r = s.r;
            if (r.width() >= r.height()) {
                const double m = 0.5 * (r.x0 + r.x1);
                halves.push_back({r.x0, m, r.y0, r.y1});
                halves.push_back({m, r.x1, r.y0, r.y1});
            } else {
                const double m = 0.5 * (r.y0 + r.y1);
                halves.push_back({r.x0, r.x1, r.y0, m});
                halves.push_back({r.x0, r.x1, m, r.y1});
            }
        }
        const long base = next_id;
        next_id += static_cast<long>(halves.size());
        auto kids = parallel_map<Seg2>(
            halves.size(), opt.exec, [&](std::size_t i) {
                return eval_seg_2d(f, halves[i], base + static_cast<long>(i));
            });
        for (Seg2& s : kids) {
            evals += 225;
            push(std::move(s));
        }
    }
    std::vector<Seg2> leaves = std::move(done);
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](const Seg2& a, const Seg2& b) {
        if (a.r.x0 != b.r.x0) return a.r.x0 < b.r.x0;
        if (a.r.y0 != b.r.y0) return a.r.y0 < b.r.y0;
        return a.id < b.id;
    });
    Complex v{0, 0};
    double e = 0;
    for (const Seg2& s : leaves) {
        v += s.val;
        e += s.err;
    }
    res.value = v;
    res.abs_error = e;
    res.evaluations = evals;
    if (!res.converged)
        res.converged =
            e <= std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
    return res;
}

QuadratureResult integrate_pv(const RealFn& f, double s, double a, double b,
                              QuadratureOptions opt) {
    if (!(a < s && s < b))
        throw DomainError("integrate_pv: singularity must be interior");
    const double eps0 = 0.5 * std::min(s - a, b - s);
    QuadratureOptions piece = opt;
    piece.abs_tol = opt.abs_tol / 64;
    piece.rel_tol = std::min(opt.rel_tol, 1e-12);
    piece.max_evals = opt.max_evals / 8;

    long evals = 0;
    double quad_err = 0;
    auto run = [&](double lo, double hi) {
        QuadratureResult r = integrate_1d(f, lo, hi, piece);
        evals += r.evaluations;
        quad_err += r.abs_error;
        return r.value;
    };

    Complex I = run(a, s - eps0) + run(s + eps0, b);

    const int max_levels = 24;
    std::vector<double> epss;
    std::vector<Complex> tab;  // Neville table row
    Complex best{0, 0};
    double best_err = HUGE_VAL;
    double prev_extrap_norm = HUGE_VAL;
    bool ok = false;
    double eps = eps0;
    for (int m = 0; m < max_levels; ++m) {
        epss.push_back(eps);
        tab.push_back(I);
        // Neville update in place: tab[j] becomes the degree-(m-j) estimate.
        for (int j = static_cast<int>(tab.size()) - 2; j >= 0; --j) {
            const double x0 = epss[j], x1 = epss.back();
            tab[j] = tab[j + 1] + (tab[j + 1] - tab[j]) * (x1 / (x0 - x1));
        }
        if (m >= 3) {
            const double change = std::abs(tab[0] - best);
            const double err = change + quad_err;
            if (err < best_err) {
                best_err = err;
                ok = err <= std::max(opt.abs_tol,
                                     opt.rel_tol * std::abs(tab[0]));
            }
            if (ok) {
                best = tab[0];
                break;
            }
            // Divergence of the extrapolation table.
            if (std::abs(tab[0]) > 1e6 * (1 + std::abs(I)) &&
                std::abs(tab[0]) > prev_extrap_norm * 10)
                throw NoConvergenceError(
                    "integrate_pv: extrapolation diverging");
            prev_extrap_norm = std::abs(tab[0]);
        }
        best = tab[0];
        // Peel one symmetric shell: eps -> eps/2.
        const double e2 = eps / 2;
        I += run(s - eps, s - e2) + run(s + e2, s + eps);
        eps = e2;
    }
    if (!ok && best_err > std::max(opt.abs_tol,
                                   opt.rel_tol * std::abs(best)) * 100)
        throw NoConvergenceError("integrate_pv: extrapolants did not settle");
    QuadratureResult res;
    res.value = best;
    res.abs_error = best_err == HUGE_VAL ? quad_err : best_err;
    res.evaluations = evals;
    res.converged = ok;
    return res;
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Convergent: return "Convergent";
        case VerdictKind::Divergent: return "Divergent";
        default: return "Inconclusive";
    }
}

IntegralVerdict improper_dyadic(const RealFn& f, double inner, double outer,
                                DyadicOptions opt) {
    if (!(outer > 0) || inner < 0 || inner >= outer)
        throw DomainError("improper_dyadic: requires 0 <= inner < outer");
    IntegralVerdict v;
    const double hard_floor =
        std::max({inner, opt.floor, outer * std::ldexp(1.0, -opt.max_shells),
                  1e-280});
    const int K = opt.last_shells;

    Complex sum{0, 0};
    double quad_err = 0;
    std::vector<double> mags;
    bool at_floor = false;

    for (int k = 0;; ++k) {
        const double hi = outer * std::ldexp(1.0, -k);
        double lo = 0.5 * hi;
        if (lo <= hard_floor) {
            lo = hard_floor;
            at_floor = true;
        }
        QuadratureResult shell = integrate_1d(f, lo, hi, opt.quad);
        sum += shell.value;
        quad_err += shell.abs_error;
        mags.push_back(std::abs(shell.value));
        v.dyadic_trace.push_back({k, lo, hi, shell.value, sum});

        const int n = static_cast<int>(mags.size());
        if (n >= K + 1) {
            const double zero_floor =
                opt.tol * 1e-6 * std::max(1.0, std::abs(sum)) + 1e-300;
            bool all_zero = true;
            for (int j = n - K; j < n; ++j)
                if (mags[j] > zero_floor) all_zero = false;
            if (all_zero) {
                v.kind = VerdictKind::Convergent;
                v.value = sum;
                v.abs_error = quad_err + K * zero_floor;
                v.note = "tail numerically zero";
                return v;
            }

            bool geometric = true, nondecreasing = true, decreasing = true;
            double rmax = 0;
            for (int j = n - K - 1; j < n - 1; ++j) {
                if (mags[j] <= zero_floor) {
                    geometric = nondecreasing = decreasing = false;
                    break;
                }
                const double r = mags[j + 1] / mags[j];
                rmax = std::max(rmax, r);
                if (r > opt.ratio_threshold) geometric = false;
                if (r < 1.0) nondecreasing = false;
                if (r >= 1.0) decreasing = false;
            }

            if (geometric) {
                const double r = mags[n - 1] / mags[n - 2];
                const Complex tail =
                    v.dyadic_trace.back().term * (r / (1.0 - r));
                const double tail_mag = std::abs(tail);
                // Ratio drift bounds the extrapolation uncertainty.
                double drift = 0;
                for (int j = n - K - 1; j < n - 1; ++j)
                    drift = std::max(drift,
                                     std::abs(mags[j + 1] / mags[j] - r));
                const double tail_err =
                    tail_mag * std::min(1.0, 3.0 * drift / (1.0 - rmax));
                if (tail_mag + tail_err <=
                        std::max(opt.tol, opt.tol * std::abs(sum)) ||
                    at_floor) {
                    v.kind = VerdictKind::Convergent;
                    v.value = sum + tail;
                    v.abs_error = quad_err + std::max(tail_err,
                                                      0.05 * tail_mag);
                    v.note = "geometric tail, ratio " + std::to_string(r);
                    return v;
                }
            } else if (nondecreasing && k >= K) {
                v.kind = VerdictKind::Divergent;
                v.value = sum;
                v.abs_error = quad_err;
                v.note = "shell terms fail to decay";
                return v;
            } else if (decreasing && k >= 2 * K) {
                // Slow (sub-geometric) decay: estimate term_j ~ j^-s.
                double s_sum = 0, s_min = HUGE_VAL, s_max = -HUGE_VAL;
                for (int j = n - K - 1; j < n - 1; ++j) {
                    const double s_j = std::log(mags[j] / mags[j + 1]) /
                                       std::log((j + 2.0) / (j + 1.0));
                    s_sum += s_j;
                    s_min = std::min(s_min, s_j);
                    s_max = std::max(s_max, s_j);
                }
                const double s_mean = s_sum / K;
                if (s_max <= opt.exponent_div) {
                    v.kind = VerdictKind::Divergent;
                    v.value = sum;
                    v.abs_error = quad_err;
                    v.note = "harmonic-like shells, exponent " +
                             std::to_string(s_mean);
                    return v;
                }
                if (s_min >= opt.exponent_conv && at_floor) {
                    const double kk = n;
                    const Complex tail = v.dyadic_trace.back().term *
                                         (kk / (s_mean - 1.0));
                    v.kind = VerdictKind::Convergent;
                    v.value = sum + tail;
                    v.abs_error =
                        quad_err +
                        std::abs(tail) *
                            (3.0 / kk + (s_max - s_min) / (s_mean - 1.0));
                    v.note = "polynomial tail, exponent " +
                             std::to_string(s_mean);
                    return v;
                }
            }
        }
        if (at_floor) {
            v.kind = VerdictKind::Inconclusive;
            v.value = sum;
            v.abs_error = quad_err;
            v.note = "shell floor reached before classification";
            return v;
        }
    }
}

}  // namespace qcs
