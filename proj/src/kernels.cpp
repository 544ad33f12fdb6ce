#include "qsprep/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsprep::kern {

namespace {

// Parallelism only pays off past this size, and nested parallel regions
// (e.g. kernels called from a parallel trial sweep) stay serial.
constexpr std::size_t kParallelCutoff = std::size_t{1} << 15;

bool use_parallel(std::size_t n) {
#ifdef _OPENMP
  return n >= kParallelCutoff && !omp_in_parallel();
#else
  (void)n;
  return false;
#endif
}

template <class BlockFn>
double blocked_reduce(std::size_t n, BlockFn&& block_fn) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb <= 1) return n == 0 ? 0.0 : block_fn(0, n);
  std::vector<double> partial(nb);
  const bool par = use_parallel(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    partial[static_cast<std::size_t>(b)] = block_fn(lo, hi);
  }
  (void)par;
  double total = 0.0;
  for (double p : partial) total += p;  // index order: thread-count invariant
  return total;
}

}  // namespace

double sum(std::span<const double> a) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    return s;
  });
}

double sum_squares(std::span<const double> a) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * a[i];
    return s;
  });
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

void sqrt_scaled(std::span<const double> w, double scale,
                 std::span<double> out) {
  if (w.size() != out.size())
    throw std::invalid_argument("sqrt_scaled: size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(w.size());
  const bool par = use_parallel(w.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        std::sqrt(w[static_cast<std::size_t>(i)] * scale);
  (void)par;
}

void negate_stride2(std::span<double> a, std::size_t offset) {
  const std::int64_t n = static_cast<std::int64_t>(a.size() / 2);
  const bool par = use_parallel(a.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t k = 2 * static_cast<std::size_t>(i) + offset;
    a[k] = -a[k];
  }
  (void)par;
}

double sum_squares_stride2(std::span<const double> a, std::size_t offset) {
  const std::size_t half = a.size() / 2;
  return blocked_reduce(half, [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = a[2 * i + offset];
      s += v * v;
    }
    return s;
  });
}

void reflect_about(std::span<const double> psi0, std::span<double> state) {
  const double s2 = 2.0 * dot(psi0, state);
  const std::int64_t n = static_cast<std::int64_t>(state.size());
  const bool par = use_parallel(state.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    state[k] = s2 * psi0[k] - state[k];
  }
  (void)par;
}

void scale(std::span<double> a, double factor) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  const bool par = use_parallel(a.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
  for (std::int64_t i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] *= factor;
  (void)par;
}

namespace serial {

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double sum_squares(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void sqrt_scaled(std::span<const double> w, double scale,
                 std::span<double> out) {
  if (w.size() != out.size())
    throw std::invalid_argument("sqrt_scaled: size mismatch");
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::sqrt(w[i] * scale);
}

void reflect_about(std::span<const double> psi0, std::span<double> state) {
  const double s2 = 2.0 * dot(psi0, state);
  for (std::size_t i = 0; i < state.size(); ++i)
    state[i] = s2 * psi0[i] - state[i];
}

}  // namespace serial

}  // namespace qsprep::kern
