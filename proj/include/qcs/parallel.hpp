#pragma once
#include <cstddef>
#include <vector>

#ifdef QCS_HAVE_OPENMP
#include <omp.h>
#endif

namespace qcs {

// Execution policy for the data-parallel kernels. Parallel runs evaluate
// independent work items concurrently but keep the combination order fixed,
// so serial and parallel results are bit-identical.
enum class ExecPolicy { serial, parallel };

ExecPolicy default_exec_policy();
void set_default_exec_policy(ExecPolicy p);

// Evaluates fn(i) for i in [0, n) into a vector. The reduction (if any) is
// the caller's responsibility and must iterate in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, ExecPolicy exec, Fn&& fn) {
    std::vector<T> out(n);
    if (exec == ExecPolicy::parallel) {
#ifdef QCS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        return out;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

}  // namespace qcs
