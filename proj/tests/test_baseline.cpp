#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsprep/baseline.hpp"
#include "qsprep/experiment.hpp"
#include "qsprep/kernels.hpp"
#include "qsprep/quantum_state.hpp"

using namespace qsprep;

namespace {

WeightVector zipf_weights(std::size_t n, double s = 1.0) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = std::pow(static_cast<double>(i + 1), -s);
  return WeightVector(std::move(w));
}

}  // namespace

TEST_CASE("build_U_state amplitudes") {
  SUBCASE("uniform weights with a saturating bound") {
    const WeightVector w({1, 1, 1, 1});
    QueryCounter counter;
    const QuantumState u = build_U_state(w, 1.0, counter);
    CHECK(counter.count == 2);
    CHECK(kern::sum_squares_stride2(u.amplitudes(), 0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("(4,2,1,1) with gamma_bound 4") {
    const WeightVector w({4, 2, 1, 1});
    QueryCounter counter;
    const QuantumState u = build_U_state(w, 4.0, counter);
    // flag-0 probability W / (N * gamma) = 8/16
    CHECK(kern::sum_squares_stride2(u.amplitudes(), 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(u.amplitudes()[0] == doctest::Approx(std::sqrt(4.0 / 16.0)));
    CHECK(u.amplitudes()[1] == doctest::Approx(std::sqrt((1 - 1.0) / 4.0)));
    CHECK(u.amplitudes()[3] ==
          doctest::Approx(std::sqrt((1 - 2.0 / 4.0) / 4.0)));
  }
  SUBCASE("bound below the maximum is rejected") {
    const WeightVector w({4, 2, 1, 1});
    QueryCounter counter;
    CHECK_THROWS(build_U_state(w, 3.0, counter));
    CHECK_THROWS(build_U_state(w, 0.0, counter));
  }
}

TEST_CASE("flag-0 branch of U equals |w>") {
  Rng rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<double> entries(1 + rng.uniform_index(200));
    for (double& v : entries) v = rng.uniform01();
    entries[rng.uniform_index(entries.size())] = 0.0;  // keep a zero in play
    if (kern::sum(entries) == 0.0) entries[0] = 0.5;
    const WeightVector w(entries);
    const double gamma = w.max_entry() * (1.0 + rng.uniform01());
    QueryCounter counter;
    const QuantumState u = build_U_state(w, gamma, counter);
    const QuantumState cond =
        drop_register(project_register(u, "rot", 0), "rot", 0);
    const QuantumState target = state_from_weights(w);
    for (std::size_t i = 0; i < w.size(); ++i)
      CHECK(std::abs(cond.amplitudes()[i] - target.amplitudes()[i]) <= 1e-10);
  }
}

TEST_CASE("prepare_single_baseline") {
  SUBCASE("p = 1: first attempt, two queries") {
    const WeightVector w({1, 1, 1, 1});
    Rng rng(5);
    QueryCounter counter;
    const BaselineResult r = prepare_single_baseline(w, 1.0, rng, counter);
    CHECK(r.queries_used == 2);
    CHECK(counter.count == 2);
    CHECK(r.aa_iterations == 0);
    CHECK(fidelity(r.state, state_from_weights(w)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("collapse is exact for (4,2,1,1)") {
    const WeightVector w({4, 2, 1, 1});
    Rng rng(6);
    QueryCounter counter;
    const BaselineResult r = prepare_single_baseline(w, 4.0, rng, counter);
    CHECK(fidelity(r.state, state_from_weights(w)) >= 1.0 - 1e-9);
    CHECK(r.queries_used % 2 == 0);
  }
}

TEST_CASE("baseline cost scales like sqrt(N*gamma/W) for a basis vector") {
  // w = e_1, N = 1024: sqrt(N*gamma/W) = 32. The schedule constant was fit
  // once at this configuration (mean/32 ~ 4.8); factor-4 band around it.
  std::vector<double> entries(1024, 0.0);
  entries[0] = 1.0;
  const WeightVector w(entries);
  Rng rng(77);
  double total = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    QueryCounter counter;
    prepare_single_baseline(w, 1.0, rng, counter);
    total += static_cast<double>(counter.count);
  }
  const double mean = total / seeds;
  const double reference = 32.0 * 4.8;
  CHECK(mean >= reference / 4.0);
  CHECK(mean <= reference * 4.0);
}

TEST_CASE("naive_k_copies") {
  SUBCASE("uniform weights: 2 queries per copy") {
    const WeightVector w({1, 1, 1, 1});
    Rng rng(8);
    const auto [states, total] = naive_k_copies(w, 3, 1.0, rng);
    CHECK(states.size() == 3);
    CHECK(total == 6);
  }
  SUBCASE("K = 1 reduces to the single-copy path") {
    const WeightVector w({4, 2, 1, 1});
    Rng a(123), b(123);
    QueryCounter counter;
    const BaselineResult single = prepare_single_baseline(w, 4.0, a, counter);
    const auto [states, total] = naive_k_copies(w, 1, 4.0, b);
    CHECK(total == single.queries_used);
    CHECK(fidelity(states[0], single.state) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("K copies cost about K times one copy") {
    const WeightVector w = zipf_weights(1024);
    Rng rng(9);
    const int seeds = 30;
    double singles = 0.0, batches = 0.0;
    for (int s = 0; s < seeds; ++s) {
      QueryCounter counter;
      prepare_single_baseline(w, w.max_entry(), rng, counter);
      singles += static_cast<double>(counter.count);
      const auto [states, total] = naive_k_copies(w, 16, w.max_entry(), rng);
      batches += static_cast<double>(total);
    }
    const double ratio = batches / (16.0 * singles);
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.2);
  }
}

TEST_CASE("per-copy cost grows like sqrt(gamma_bound)") {
  const WeightVector w = zipf_weights(256);
  Rng rng(10);
  std::vector<std::pair<double, double>> points;
  for (double gamma : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    double total = 0.0;
    const int seeds = 150;
    for (int s = 0; s < seeds; ++s) {
      QueryCounter counter;
      prepare_single_baseline(w, gamma, rng, counter);
      total += static_cast<double>(counter.count);
    }
    points.emplace_back(gamma, total / seeds);
  }
  const FitResult fit = fit_exponent(points);
  CHECK(fit.slope >= 0.4);
  CHECK(fit.slope <= 0.6);
}
