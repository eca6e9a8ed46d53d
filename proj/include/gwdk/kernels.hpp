#pragma once

// Data-parallel inner loops shared by every spectral operation.
//
// Each kernel exists twice: a plain serial loop, kept as the reference the
// tests compare against, and an OpenMP version used by default. The parallel
// reductions are blocked with a block size that does not depend on the
// thread count, so results are bit-reproducible across OMP_NUM_THREADS.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

namespace gwdk {

enum class Execution { serial, parallel };

namespace kernels {

inline constexpr std::size_t kReductionBlock = 4096;

inline int max_threads() { return omp_get_max_threads(); }

namespace serial {

template <typename F>
void for_each_index(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Trapezoid rule of y over the (possibly non-uniform) abscissae x.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    sum += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return sum;
}

}  // namespace serial

namespace parallel {

template <typename F>
void for_each_index(std::size_t n, F&& f) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2) return 0.0;
  const std::size_t intervals = x.size() - 1;
  const std::size_t blocks = (intervals + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto block_count = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < block_count; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(begin + kReductionBlock, intervals);
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sum += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    }
    partial[static_cast<std::size_t>(b)] = sum;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace parallel

template <typename F>
void for_each_index(Execution exec, std::size_t n, F&& f) {
  if (exec == Execution::serial) {
    serial::for_each_index(n, std::forward<F>(f));
  } else {
    parallel::for_each_index(n, std::forward<F>(f));
  }
}

inline double trapezoid(Execution exec, std::span<const double> x,
                        std::span<const double> y) {
  return exec == Execution::serial ? serial::trapezoid(x, y)
                                   : parallel::trapezoid(x, y);
}

}  // namespace kernels
}  // namespace gwdk
