#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/quadrature.hpp"

using namespace qcs;

namespace {

bool bit_identical(Complex a, Complex b) {
    return std::memcmp(&a, &b, sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("1d: polynomial, singular-endpoint, and zero integrands") {
    auto r = integrate_1d([](double x) { return Complex{x * x, 0}; }, 0, 1);
    CHECK(std::abs(r.value.real() - 1.0 / 3.0) < 1e-12);
    CHECK(r.converged);

    // ∫₀^½ t^(-1/2) log(1/t) dt = √(1/2)·(2 ln 2 + 4)
    auto s = integrate_1d(
        [](double t) {
            return Complex{std::log(1.0 / t) / std::sqrt(t), 0};
        },
        0, 0.5, {1e-9, 1e-12, 10'000'000, ExecPolicy::serial});
    const double expect = std::sqrt(0.5) * (2 * std::log(2.0) + 4.0);
    CHECK(std::abs(s.value.real() - expect) < 1e-6);

    auto z = integrate_1d([](double) { return Complex{0, 0}; }, 0, 1);
    CHECK(z.value == Complex{0, 0});
}

TEST_CASE("2d: constant and singular closed forms") {
    auto one =
        integrate_2d([](Complex) { return Complex{1, 0}; }, {0, 1, 0, 1});
    CHECK(std::abs(one.value.real() - 1.0) < 1e-12);

    auto a = integrate_2d(
        [](Complex z) {
            const double n = std::norm(z);
            return Complex{n == 0 ? 0.0 : std::abs(z.imag()) / n, 0};
        },
        {-1, 1, -1, 1}, {1e-6, 1e-9, 40'000'000, ExecPolicy::parallel});
    CHECK(std::abs(a.value.real() - (std::numbers::pi + 2 * std::log(2.0))) <
          1e-5);

    auto b = integrate_2d(
        [](Complex z) {
            const double n = std::abs(z);
            return Complex{n == 0 ? 0.0 : 1.0 / n, 0};
        },
        {0, 1, 0, 1}, {1e-6, 1e-9, 40'000'000, ExecPolicy::parallel});
    CHECK(std::abs(b.value.real() - 2 * std::log(1.0 + std::sqrt(2.0))) <
          1e-5);
}

TEST_CASE("principal value: odd pole, shifted pole, affine numerator") {
    auto r1 = integrate_pv([](double x) { return Complex{1.0 / x, 0}; }, 0,
                           -1, 1);
    CHECK(std::abs(r1.value.real()) < 1e-9);

    auto r2 = integrate_pv(
        [](double x) { return Complex{(1.0 + x) / x, 0}; }, 0, -1, 1);
    CHECK(std::abs(r2.value.real() - 2.0) < 1e-8);

    auto r3 = integrate_pv(
        [](double x) { return Complex{1.0 / (x - 1.0), 0}; }, 1, 0, 2);
    CHECK(std::abs(r3.value.real()) < 1e-9);
}

TEST_CASE("pv of a pole-free integrand matches plain integration") {
    auto pv = integrate_pv([](double x) { return Complex{std::cos(x), 0}; },
                           0, -1, 1);
    auto plain =
        integrate_1d([](double x) { return Complex{std::cos(x), 0}; }, -1, 1);
    CHECK(std::abs(pv.value - plain.value) <
          2e-8 + pv.abs_error + plain.abs_error);
}

TEST_CASE("linearity within summed error estimates") {
    auto f = [](double x) { return Complex{std::exp(-x * x), 0}; };
    auto g = [](double x) { return Complex{std::sin(3 * x), 0.2 * x}; };
    const Complex alpha{2.0, -1.0}, beta{-0.5, 0.25};
    auto combo = integrate_1d(
        [&](double x) { return alpha * f(x) + beta * g(x); }, -1, 2);
    auto fa = integrate_1d(f, -1, 2);
    auto ga = integrate_1d(g, -1, 2);
    CHECK(std::abs(combo.value - (alpha * fa.value + beta * ga.value)) <
          2 * (combo.abs_error + fa.abs_error + ga.abs_error) + 1e-12);
}

TEST_CASE("determinism: serial and parallel runs are bit-identical") {
    auto f = [](Complex z) {
        return Complex{std::sin(25 * z.real()) * std::cos(19 * z.imag()),
                       std::cos(11 * z.real() * z.imag())};
    };
    QuadratureOptions so{1e-8, 1e-10, 20'000'000, ExecPolicy::serial};
    QuadratureOptions po = so;
    po.exec = ExecPolicy::parallel;
    auto rs = integrate_2d(f, {-1, 1.3, -0.7, 1}, so);
    auto rp = integrate_2d(f, {-1, 1.3, -0.7, 1}, po);
    CHECK(bit_identical(rs.value, rp.value));
    CHECK(rs.evaluations == rp.evaluations);

    auto g = [](double x) { return Complex{std::sin(40 * x) / (1 + x * x), 0}; };
    auto gs = integrate_1d(g, 0, 3, so);
    auto gp = integrate_1d(g, 0, 3, po);
    CHECK(bit_identical(gs.value, gp.value));
}

TEST_CASE("improper dyadic verdicts on the log family") {
    const double e_inv = 1.0 / std::numbers::e;
    auto conv = improper_dyadic(
        [](double t) {
            const double l = std::log(1.0 / t);
            return Complex{1.0 / (t * l * l), 0};
        },
        0, e_inv);
    CHECK(conv.kind == VerdictKind::Convergent);
    CHECK(std::abs(conv.value.real() - 1.0) < 1e-3);

    auto div = improper_dyadic(
        [](double t) {
            return Complex{1.0 / (t * std::log(1.0 / t)), 0};
        },
        0, e_inv);
    CHECK(div.kind == VerdictKind::Divergent);

    auto lin = improper_dyadic([](double t) { return Complex{t, 0}; }, 0, 1);
    CHECK(lin.kind == VerdictKind::Convergent);
    CHECK(std::abs(lin.value.real() - 0.5) < 1e-8);
    CHECK(!lin.dyadic_trace.empty());
}

TEST_CASE("dyadic oracle: reported error covers a 10x deeper cutoff") {
    auto f = [](double t) { return Complex{std::sqrt(t), 0}; };
    auto v = improper_dyadic(f, 0, 1);
    REQUIRE(v.kind == VerdictKind::Convergent);
    // Direct integral on [inner/10, 1] with much smaller inner cutoff.
    auto deep = integrate_1d(f, 1e-14, 1.0,
                             {1e-12, 1e-14, 10'000'000, ExecPolicy::serial});
    CHECK(std::abs(v.value - deep.value) <= v.abs_error + 1e-9);
}

TEST_CASE("error paths: non-finite values and exhausted budgets throw") {
    CHECK_THROWS_AS(
        integrate_1d([](double x) { return Complex{1.0 / x, 0}; }, 0, 1,
                     {1e-10, 1e-12, 100'000, ExecPolicy::serial}),
        Error);
    CHECK_THROWS_AS(
        integrate_1d(
            [](double x) {
                return Complex{std::numeric_limits<double>::quiet_NaN() * x,
                               0};
            },
            0, 1),
        NonFiniteError);
}
