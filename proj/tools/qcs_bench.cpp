#include <chrono>
#include <cmath>
#include <cstdio>

#include "qcs/example5.hpp"
#include "qcs/quadrature.hpp"

using namespace qcs;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    // Oscillatory 2D integral: heavy enough that wave-parallel child
    // evaluation matters, smooth enough that both paths converge.
    auto f = [](Complex z) {
        const double x = z.real(), y = z.imag();
        return Complex{std::sin(40.0 * x + 1.3) * std::cos(37.0 * y + 0.7) /
                           (1.0 + x * x + y * y),
                       0.0};
    };
    const Rect box{-2, 2, -2, 2};
    QuadratureOptions serial{1e-13, 1e-13, 50'000'000, ExecPolicy::serial};
    QuadratureOptions par = serial;
    par.exec = ExecPolicy::parallel;

    QuadratureResult rs, rp;
    const double ts = time_ms([&] { rs = integrate_2d(f, box, serial); });
    const double tp = time_ms([&] { rp = integrate_2d(f, box, par); });
    std::printf("integrate_2d  serial %8.1f ms  parallel %8.1f ms  "
                "speedup %.2fx  evals %ld  |diff| %.3e\n",
                ts, tp, ts / tp, rs.evaluations, std::abs(rs.value - rp.value));

    const Section5Map map = section5::build();
    double bs = 0, bp = 0;
    const double gs = time_ms(
        [&] { bs = section5::becker_criterion(map, 200, ExecPolicy::serial); });
    const double gp = time_ms([&] {
        bp = section5::becker_criterion(map, 200, ExecPolicy::parallel);
    });
    std::printf("probe sweep   serial %8.1f ms  parallel %8.1f ms  "
                "speedup %.2fx  |diff| %.3e\n",
                gs, gp, gs / gp, std::abs(bs - bp));
    return 0;
}
