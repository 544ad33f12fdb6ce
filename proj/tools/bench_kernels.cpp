// Timing comparison of the blocked OpenMP kernels against the serial
// reference loops, over the vector sizes the simulator actually touches.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "qsprep/alias.hpp"
#include "qsprep/kernels.hpp"
#include "qsprep/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qsprep;

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double time_ms(int reps, Fn&& fn) {
  const auto start = Clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         reps;
}

volatile double sink = 0.0;

void run_size(std::size_t n, int reps) {
  Rng rng(n);
  std::vector<double> a(n), b(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform01();
    b[i] = rng.uniform01() - 0.5;
  }

  struct Row {
    const char* name;
    double serial_ms;
    double parallel_ms;
    double diff;
  };
  std::vector<Row> rows;

  rows.push_back({"sum_squares",
                  time_ms(reps, [&] { sink = kern::serial::sum_squares(a); }),
                  time_ms(reps, [&] { sink = kern::sum_squares(a); }),
                  kern::sum_squares(a) - kern::serial::sum_squares(a)});
  rows.push_back({"dot",
                  time_ms(reps, [&] { sink = kern::serial::dot(a, b); }),
                  time_ms(reps, [&] { sink = kern::dot(a, b); }),
                  kern::dot(a, b) - kern::serial::dot(a, b)});
  rows.push_back({"sqrt_scaled",
                  time_ms(reps, [&] { kern::serial::sqrt_scaled(a, 0.5, out); }),
                  time_ms(reps, [&] { kern::sqrt_scaled(a, 0.5, out); }), 0.0});
  rows.push_back(
      {"reflect_about",
       time_ms(reps,
               [&] {
                 std::vector<double> s = b;
                 kern::serial::reflect_about(a, s);
                 sink = s[0];
               }),
       time_ms(reps,
               [&] {
                 std::vector<double> s = b;
                 kern::reflect_about(a, s);
                 sink = s[0];
               }),
       0.0});

  std::printf("n = %zu\n", n);
  std::printf("  %-14s %12s %12s %10s %14s\n", "kernel", "serial(ms)",
              "parallel(ms)", "speedup", "result diff");
  for (const Row& r : rows) {
    const double speedup =
        r.parallel_ms > 0.0 ? r.serial_ms / r.parallel_ms : 0.0;
    std::printf("  %-14s %12.4f %12.4f %9.2fx %14.3e\n", r.name, r.serial_ms,
                r.parallel_ms, speedup, r.diff);
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel kernels fall back to serial\n");
#endif

  const std::vector<std::size_t> sizes =
      quick ? std::vector<std::size_t>{std::size_t{1} << 16}
            : std::vector<std::size_t>{std::size_t{1} << 16, std::size_t{1}
                                           << 18,
                                       std::size_t{1} << 20, std::size_t{1}
                                           << 22};
  const int reps = quick ? 5 : 20;
  for (std::size_t n : sizes) run_size(n, reps);

  // Alias build throughput rounds out the classical-baseline picture.
  {
    Rng rng(99);
    std::vector<double> w(quick ? (1u << 14) : (1u << 20));
    for (double& v : w) v = rng.uniform01();
    const WeightVector wv(w);
    const double ms = time_ms(quick ? 5 : 20, [&] {
      const AliasTable t = alias_build(wv);
      sink = t.keep_prob[0];
    });
    std::printf("alias_build n = %zu: %.4f ms\n", wv.size(), ms);
  }
  return 0;
}
