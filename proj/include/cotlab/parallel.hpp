#pragma once

// Data-parallel driver for the check kernels (Ext tables, trial batteries).
// Two implementations of the same contract: a serial reference and an OpenMP
// version. Results are written by index, so both produce identical output;
// the tests and the bench tool compare them directly.

#include <cstdlib>
#include <functional>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cotlab {

enum class ExecMode { Serial, Parallel };

// Process-wide default; the CLI sets this from --threads / --serial.
ExecMode& exec_mode();
int& thread_count();

template <typename Fn>
void for_each_index_serial(int count, Fn&& fn) {
    for (int i = 0; i < count; ++i) fn(i);
}

template <typename Fn>
void for_each_index_parallel(int count, Fn&& fn) {
#if defined(_OPENMP)
    int threads = thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (int i = 0; i < count; ++i) fn(i);
#else
    for_each_index_serial(count, fn);
#endif
}

template <typename Fn>
void for_each_index(int count, Fn&& fn) {
    if (exec_mode() == ExecMode::Parallel)
        for_each_index_parallel(count, fn);
    else
        for_each_index_serial(count, fn);
}

// Convenience: fill a vector of results by index.
template <typename T, typename Fn>
std::vector<T> map_indexed(int count, Fn&& fn) {
    std::vector<T> out(static_cast<size_t>(count));
    for_each_index(count, [&](int i) { out[static_cast<size_t>(i)] = fn(i); });
    return out;
}

}  // namespace cotlab
