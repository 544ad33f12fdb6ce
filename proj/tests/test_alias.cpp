#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsprep/alias.hpp"

using namespace qsprep;

namespace {

// Reconstructs the sampling law of a table: column mass plus alias inflow.
std::vector<double> table_law(const AliasTable& t) {
  const double inv_n = 1.0 / static_cast<double>(t.size());
  std::vector<double> law(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    law[i] += t.keep_prob[i] * inv_n;
    if (t.keep_prob[i] < 1.0) law[t.alias[i]] += (1.0 - t.keep_prob[i]) * inv_n;
  }
  return law;
}

}  // namespace

TEST_CASE("alias_build worked examples") {
  SUBCASE("uniform weights: every column keeps") {
    const AliasTable t = alias_build(WeightVector({1, 1, 1, 1}));
    for (double p : t.keep_prob) CHECK(p == 1.0);
  }
  SUBCASE("(4,2,1,1): hand-derived columns") {
    const AliasTable t = alias_build(WeightVector({4, 2, 1, 1}));
    CHECK(t.keep_prob[0] == 1.0);
    CHECK(t.keep_prob[1] == 1.0);
    CHECK(t.keep_prob[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.alias[2] == 0);
    CHECK(t.keep_prob[3] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.alias[3] == 0);
  }
  SUBCASE("(1,0): zero-weight column defers entirely") {
    const AliasTable t = alias_build(WeightVector({1, 0}));
    CHECK(t.keep_prob[0] == 1.0);
    CHECK(t.keep_prob[1] == 0.0);
    CHECK(t.alias[1] == 0);
  }
}

TEST_CASE("alias table reconstructs the distribution exactly") {
  Rng rng(31);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + rng.uniform_index(4096);
    std::vector<double> w(n);
    bool any = false;
    for (double& v : w) {
      v = rng.uniform01() < 0.1 ? 0.0 : rng.uniform01();
      any = any || v > 0.0;
    }
    if (!any) w[0] = 1.0;
    const WeightVector wv(w);
    const AliasTable t = alias_build(wv);
    const auto law = table_law(t);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(law[i] - wv[i] / wv.total()) <= 1e-12);
    CHECK(t.build_cost <= 4 * static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("alias_sample") {
  SUBCASE("fixed seed reproduces the sample sequence") {
    const AliasTable t = alias_build(WeightVector({4, 2, 1, 1}));
    Rng a(55), b(55);
    for (int i = 0; i < 200; ++i)
      CHECK(alias_sample(t, a) == alias_sample(t, b));
  }
  SUBCASE("empirical law of (4,2,1,1)") {
    const WeightVector w({4, 2, 1, 1});
    const AliasTable t = alias_build(w);
    Rng rng(56);
    std::vector<std::size_t> samples(100000);
    for (auto& s : samples) s = alias_sample(t, rng);
    CHECK(empirical_tv(samples, w) <= 0.02);
  }
  SUBCASE("uniform table stays uniform") {
    const WeightVector w({1, 1, 1, 1, 1, 1, 1, 1});
    const AliasTable t = alias_build(w);
    Rng rng(57);
    std::vector<std::size_t> samples(40000);
    for (auto& s : samples) s = alias_sample(t, rng);
    CHECK(empirical_tv(samples, w) <= 0.02);
  }
}

TEST_CASE("empirical_tv") {
  const WeightVector w({1, 1});
  SUBCASE("exactly proportional samples") {
    const std::vector<std::size_t> samples{0, 1, 0, 1};
    CHECK(empirical_tv(samples, w) == 0.0);
  }
  SUBCASE("fully collapsed samples") {
    const std::vector<std::size_t> samples{0, 0, 0, 0};
    CHECK(empirical_tv(samples, w) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("errors") {
    const std::vector<std::size_t> empty;
    CHECK_THROWS(empirical_tv(empty, w));
    const std::vector<std::size_t> bad{7};
    CHECK_THROWS(empirical_tv(bad, w));
  }
}
