#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsprep/rng.hpp"
#include "qsprep/weight_vector.hpp"

namespace qsprep {

/// Thrown for invalid experiment configurations (CLI exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Mode { pipeline, baseline, topk, sampling, reduction_demo };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

/// Where trial weights come from: a file, or one of the built-in generators
/// (uniform = all ones, zipf:s = rank^-s, binary:m = m ones at seeded random
/// positions, single-spike = e_1).
struct WeightsSource {
  enum class Kind { file, uniform, zipf, binary, spike };
  Kind kind = Kind::uniform;
  std::string path;
  double param = 1.0;
};

WeightsSource parse_generator(const std::string& spec);

/// Builds the weight vector for one trial. `rng` is consumed only by the
/// binary generator (random positions).
WeightVector make_weights(const WeightsSource& source, std::size_t n,
                          Rng& rng);

struct ExperimentConfig {
  Mode mode = Mode::pipeline;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> k_values;
  double delta = 0.1;
  std::size_t trials = 1;
  std::uint64_t seed = 42;
  WeightsSource weights;
  std::string out_path;  // empty = no CSV written
};

/// One experiment row. Query fields are exact integers; copy_queries_mean is
/// the exact integer sum divided by the copy count. wall_ms is kept at zero
/// in serialized records so that re-runs are byte-identical; live timings are
/// reported by the CLI on stdout instead.
struct RunRecord {
  std::string mode;
  std::size_t n = 0;
  std::size_t k = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;  // derived per-trial seed
  std::size_t trial = 0;
  std::uint64_t prep_queries = 0;
  double copy_queries_mean = 0.0;
  std::uint64_t total_queries = 0;
  double fidelity_min = 0.0;
  double tv = 0.0;
  double wall_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "mode,N,K,delta,seed,trial,prep_q,copy_q_mean,total_q,fid_min,tv,wall_ms";

/// Runs the configured sweep: one record per (N, K, trial), in deterministic
/// order, trial t seeded with hash(seed, N, K, t). Trials run in parallel
/// when OpenMP is available (capped by QSPREP_THREADS); results do not depend
/// on the execution order. Writes the CSV atomically when out_path is set.
/// In reduction-demo mode, demo_distinct (when given) receives the distinct
/// 1-position count of each trial, aligned with the records.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config,
                                      std::vector<double>* demo_distinct =
                                          nullptr);

void write_csv(const std::string& path, const std::vector<RunRecord>& records);

/// Reads a record CSV back, re-checking that each row's total decomposes
/// into preprocessing plus per-copy queries.
std::vector<RunRecord> load_csv(const std::string& path);

struct FitResult {
  double slope = 0.0;
  double r2 = 0.0;
};

/// Least-squares slope of log y against log x. Requires >= 3 points with
/// positive coordinates and at least two distinct x values.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points);

/// Scaling-exponent summaries over a record set, as JSON text: for every
/// fixed K with >= 3 distinct N a fit of prep_q and total_q against N, and
/// for every fixed N with >= 3 distinct K a fit of copy_q_mean against K.
std::string fit_summary_json(const std::vector<RunRecord>& records);

/// Thread budget for trial sweeps: QSPREP_THREADS when set, else the OpenMP
/// default (1 without OpenMP).
int experiment_threads();

}  // namespace qsprep
