#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qsprep/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qsprep;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ExperimentConfig small_pipeline_config() {
  ExperimentConfig cfg;
  cfg.mode = Mode::pipeline;
  cfg.n_values = {8, 16};
  cfg.k_values = {2, 4};
  cfg.delta = 0.1;
  cfg.trials = 3;
  cfg.seed = 4242;
  cfg.weights = parse_generator("zipf:1");
  return cfg;
}

}  // namespace

TEST_CASE("fit_exponent") {
  SUBCASE("exact square-root law") {
    const FitResult fit = fit_exponent({{1, 1}, {4, 2}, {16, 4}});
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("constant law") {
    const FitResult fit = fit_exponent({{1, 2}, {4, 2}, {16, 2}});
    CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.r2 == 1.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS(fit_exponent({{1, 1}, {2, 2}}));
    CHECK_THROWS(fit_exponent({{1, 1}, {2, 2}, {0.0, 3}}));
    CHECK_THROWS(fit_exponent({{1, 1}, {2, -2}, {4, 3}}));
    CHECK_THROWS(fit_exponent({{2, 1}, {2, 2}, {2, 3}}));
  }
}

TEST_CASE("generators") {
  Rng rng(1);
  SUBCASE("uniform is all ones") {
    const WeightVector w = make_weights(parse_generator("uniform"), 5, rng);
    for (std::size_t i = 0; i < 5; ++i) CHECK(w[i] == 1.0);
  }
  SUBCASE("zipf ranks") {
    const WeightVector w = make_weights(parse_generator("zipf:2"), 4, rng);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == doctest::Approx(0.25));
    CHECK(w[3] == doctest::Approx(1.0 / 16.0));
  }
  SUBCASE("binary places the requested number of ones") {
    const WeightVector w = make_weights(parse_generator("binary:6"), 32, rng);
    double total = 0.0;
    for (std::size_t i = 0; i < 32; ++i) {
      CHECK((w[i] == 0.0 || w[i] == 1.0));
      total += w[i];
    }
    CHECK(total == 6.0);
  }
  SUBCASE("single spike") {
    const WeightVector w =
        make_weights(parse_generator("single-spike"), 7, rng);
    CHECK(w[0] == 1.0);
    CHECK(w.total() == 1.0);
  }
  SUBCASE("bad specs rejected") {
    CHECK_THROWS_AS(parse_generator("nope"), ConfigError);
    CHECK_THROWS_AS(parse_generator("binary"), ConfigError);
    CHECK_THROWS_AS(parse_generator("zipf:-1"), ConfigError);
  }
}

TEST_CASE("weights file round trip and parse errors") {
  const std::string path = temp_path("qsprep_weights_test.txt");
  {
    std::ofstream out(path);
    out << "# comment line\n4\n\n2.0\n  1.0  \n1\n";
  }
  const WeightVector w = WeightVector::from_file(path);
  CHECK(w.size() == 4);
  CHECK(w.total() == doctest::Approx(8.0));

  {
    std::ofstream out(path);
    out << "1.0\nnot-a-number\n2.0\n";
  }
  try {
    WeightVector::from_file(path);
    FAIL("expected a format error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("config validation happens before any run") {
  ExperimentConfig cfg = small_pipeline_config();
  cfg.k_values = {32};  // exceeds the smallest N
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_pipeline_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_pipeline_config();
  cfg.delta = 1.0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_pipeline_config();
  cfg.mode = Mode::reduction_demo;  // zipf weights are not binary
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("run_experiment: deterministic records and CSV bytes") {
  ExperimentConfig cfg = small_pipeline_config();
  cfg.out_path = temp_path("qsprep_run_a.csv");
  const auto records_a = run_experiment(cfg);
  CHECK(records_a.size() == 12);

  cfg.out_path = temp_path("qsprep_run_b.csv");
  const auto records_b = run_experiment(cfg);
  CHECK(slurp(temp_path("qsprep_run_a.csv")) ==
        slurp(temp_path("qsprep_run_b.csv")));

  for (std::size_t i = 0; i < records_a.size(); ++i) {
    CHECK(records_a[i].seed == records_b[i].seed);
    CHECK(records_a[i].total_queries == records_b[i].total_queries);
    CHECK(records_a[i].fidelity_min == records_b[i].fidelity_min);
  }

  // Loader re-checks the total decomposition.
  const auto loaded = load_csv(temp_path("qsprep_run_a.csv"));
  CHECK(loaded.size() == records_a.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].total_queries == records_a[i].total_queries);
    CHECK(loaded[i].mode == "pipeline");
  }
  std::remove(temp_path("qsprep_run_a.csv").c_str());
  std::remove(temp_path("qsprep_run_b.csv").c_str());
}

#ifdef _OPENMP
TEST_CASE("records do not depend on the thread schedule") {
  ExperimentConfig cfg = small_pipeline_config();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto serial = run_experiment(cfg);
  omp_set_num_threads(2);
  const auto parallel = run_experiment(cfg);
  omp_set_num_threads(saved);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].total_queries == parallel[i].total_queries);
    CHECK(serial[i].fidelity_min == parallel[i].fidelity_min);
    CHECK(serial[i].tv == parallel[i].tv);
  }
}
#endif

TEST_CASE("pipeline records satisfy the module contracts") {
  ExperimentConfig cfg;
  cfg.mode = Mode::pipeline;
  cfg.n_values = {4};
  cfg.k_values = {2};
  cfg.trials = 1;
  cfg.seed = 7;
  const std::string path = temp_path("qsprep_weights_4211.txt");
  {
    std::ofstream out(path);
    out << "4\n2\n1\n1\n";
  }
  cfg.weights.kind = WeightsSource::Kind::file;
  cfg.weights.path = path;
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].prep_queries > 0);
  CHECK(records[0].fidelity_min >= 1.0 - 1e-9);
  std::remove(path.c_str());
}

TEST_CASE("baseline mode on uniform weights: 2 queries per copy") {
  ExperimentConfig cfg;
  cfg.mode = Mode::baseline;
  cfg.n_values = {16};
  cfg.k_values = {3};
  cfg.trials = 2;
  cfg.seed = 11;
  cfg.weights = parse_generator("uniform");
  const auto records = run_experiment(cfg);
  for (const RunRecord& r : records) {
    CHECK(r.copy_queries_mean == doctest::Approx(2.0));
    CHECK(r.total_queries == 6);
    CHECK(r.fidelity_min >= 1.0 - 1e-9);
  }
}

TEST_CASE("reduction-demo mode reports distinct counts") {
  ExperimentConfig cfg;
  cfg.mode = Mode::reduction_demo;
  cfg.n_values = {64};
  cfg.k_values = {4};
  cfg.trials = 5;
  cfg.seed = 13;
  cfg.weights = parse_generator("binary:8");
  std::vector<double> distinct;
  const auto records = run_experiment(cfg, &distinct);
  REQUIRE(distinct.size() == records.size());
  for (double d : distinct) {
    CHECK(d >= 1.0);
    CHECK(d <= 8.0);
  }
}

TEST_CASE("fit summary JSON carries the sweep exponents") {
  ExperimentConfig cfg;
  cfg.mode = Mode::topk;
  cfg.n_values = {64, 256, 1024};
  cfg.k_values = {4};
  cfg.trials = 5;
  cfg.seed = 17;
  cfg.weights = parse_generator("zipf:1");
  const auto records = run_experiment(cfg);
  const std::string json = fit_summary_json(records);
  CHECK(json.find("prep_q") != std::string::npos);
  CHECK(json.find("slope") != std::string::npos);
}
