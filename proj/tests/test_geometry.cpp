#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/geometry.hpp"

using namespace qcs;

TEST_CASE("whitney: layer counts, distance identity, disjoint coverage") {
    for (int n : {0, 1, 4, 12}) {
        auto cubes = whitney_decompose({-1, 1, -2, 2}, n);
        int count_n = 0;
        for (const auto& c : cubes) {
            CHECK(c.dist_to_line() == c.side);
            CHECK(c.side == std::ldexp(1.0, -c.generation));
            if (c.generation == n && c.half_plane > 0) ++count_n;
        }
        CHECK(count_n == (1 << (n + 1)));
    }

    // Disjointness + coverage of the clipped strip by area accounting.
    auto cubes = whitney_decompose({-1, 1, 0.0, 1}, 10);
    double area = 0.0;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const Rect a = cubes[i].bounds();
        area += a.area();
        for (std::size_t j = i + 1; j < cubes.size(); ++j) {
            const Rect b = cubes[j].bounds();
            const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
            const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
            CHECK(!(ox > 1e-12 && oy > 1e-12));
        }
    }
    // Strip [-1,1]x(2^-10,1]; cubes cover [side, 2*side) rows.
    const double expected = 2.0 * (1.0 - std::ldexp(1.0, -10));
    CHECK(std::abs(area - expected) < 1e-12);
}

TEST_CASE("whitney: cube_containing agrees with the tiling") {
    for (double y : {0.3, 0.75, 1e-4, -0.51}) {
        for (double x : {-0.99, 0.125, 2.7}) {
            const WhitneyCube c = cube_containing({x, y});
            const Rect b = c.bounds();
            CHECK(x >= b.x0);
            CHECK(x < b.x1);
            CHECK(std::abs(y) >= c.side);
            CHECK(std::abs(y) < 2 * c.side);
            CHECK((y > 0) == (c.half_plane > 0));
        }
    }
    const WhitneyCube c = cube_containing({0.0, 0.3});
    CHECK(c.generation == 2);
    CHECK(c.side == 0.25);
    CHECK_THROWS_AS(cube_containing({0.0, 0.0}), DomainError);
}

TEST_CASE("distance to curve: line and circle") {
    auto line = ParametrizedCurve::real_line();
    CHECK(std::abs(distance_to_curve(line, {0.3, 0.7}, -5, 5) - 0.7) < 1e-6);
    auto circle = ParametrizedCurve::unit_circle();
    CHECK(std::abs(distance_to_curve(circle, {1.5, 0}, -std::numbers::pi,
                                     std::numbers::pi) -
                   0.5) < 1e-6);
    CHECK(std::abs(distance_to_curve(circle, {0, 0}, -std::numbers::pi,
                                     std::numbers::pi) -
                   1.0) < 1e-6);
}

TEST_CASE("modulus of continuity: Lipschitz and Holder models") {
    auto lip = [](double x) { return Complex{3.0 * x, 0}; };
    for (double d : {0.1, 0.01}) {
        const double w = modulus_of_continuity(lip, d, -1, 1);
        CHECK(w <= 3 * d + 1e-12);
        CHECK(w >= 3 * d - 1e-6);
    }
    auto holder = [](double x) { return Complex{std::sqrt(std::abs(x)), 0}; };
    const double w1 = modulus_of_continuity(holder, 0.01, -1, 1);
    CHECK(w1 <= std::sqrt(0.01) + 1e-9);
    CHECK(w1 >= std::sqrt(0.01) - 1e-4);

    // Monotone in delta, subadditive-ish sanity.
    const double a = modulus_of_continuity(holder, 0.005, -1, 1);
    CHECK(a <= w1 + 1e-12);
}

TEST_CASE("dini verdicts separate Lipschitz from log-modulus") {
    auto lip = [](double t) { return t; };
    auto v1 = dini_verdict(lip, 0.5);
    CHECK(v1.kind == VerdictKind::Convergent);

    auto logm = [](double t) { return 1.0 / std::log(1.0 / t); };
    auto v2 = dini_verdict(logm, 0.1);
    CHECK(v2.kind == VerdictKind::Divergent);
}

TEST_CASE("tangent continuity: smooth circle vanishes under refinement") {
    auto circle = ParametrizedCurve::unit_circle();
    const double c1 =
        tangent_continuity_check(circle, -3.1, 3.1, 256);
    const double c2 =
        tangent_continuity_check(circle, -3.1, 3.1, 1024);
    CHECK(c2 < c1);
    CHECK(c2 < 0.01);
}
