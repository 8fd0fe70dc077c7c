#ifndef MIXNEWTON_MULTISTART_HPP
#define MIXNEWTON_MULTISTART_HPP

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mixnewton {

// Data-parallel multistart driver. Each work item is independent and derives
// its own RNG stream from its index, so the result vector is identical
// regardless of thread count or scheduling; merging stays with the caller,
// who must combine results order-independently.

// Serial reference implementation, kept for tests and benchmarks.
template <class Result, class Kernel>
std::vector<Result> run_starts_serial(int count, const Kernel& kernel) {
    std::vector<Result> out(count);
    for (int i = 0; i < count; ++i) out[i] = kernel(i);
    return out;
}

// OpenMP-parallel kernel loop. threads == 0 uses the runtime default;
// any positive value pins the team size.
template <class Result, class Kernel>
std::vector<Result> run_starts(int count, const Kernel& kernel, int threads = 0) {
#ifdef _OPENMP
    std::vector<Result> out(count);
    if (threads == 1) {
        for (int i = 0; i < count; ++i) out[i] = kernel(i);
        return out;
    }
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
        for (int i = 0; i < count; ++i) out[i] = kernel(i);
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < count; ++i) out[i] = kernel(i);
    }
    return out;
#else
    (void)threads;
    return run_starts_serial<Result>(count, kernel);
#endif
}

} // namespace mixnewton

#endif
