#include "qsprep/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsprep/alias.hpp"
#include "qsprep/baseline.hpp"
#include "qsprep/pipeline.hpp"
#include "qsprep/quantum_state.hpp"
#include "qsprep/topk.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsprep {

Mode parse_mode(const std::string& name) {
  if (name == "pipeline") return Mode::pipeline;
  if (name == "baseline") return Mode::baseline;
  if (name == "topk") return Mode::topk;
  if (name == "sampling") return Mode::sampling;
  if (name == "reduction-demo") return Mode::reduction_demo;
  throw ConfigError("unknown mode: " + name);
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::pipeline: return "pipeline";
    case Mode::baseline: return "baseline";
    case Mode::topk: return "topk";
    case Mode::sampling: return "sampling";
    case Mode::reduction_demo: return "reduction-demo";
  }
  return "?";
}

WeightsSource parse_generator(const std::string& spec) {
  WeightsSource src;
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "uniform") {
    src.kind = WeightsSource::Kind::uniform;
  } else if (name == "zipf") {
    src.kind = WeightsSource::Kind::zipf;
    src.param = arg.empty() ? 1.0 : std::strtod(arg.c_str(), nullptr);
    if (!(src.param >= 0.0) || !std::isfinite(src.param))
      throw ConfigError("zipf exponent must be a finite value >= 0");
  } else if (name == "binary") {
    src.kind = WeightsSource::Kind::binary;
    if (arg.empty()) throw ConfigError("binary generator needs a ones count");
    src.param = std::strtod(arg.c_str(), nullptr);
    if (!(src.param >= 1.0) || src.param != std::floor(src.param))
      throw ConfigError("binary ones count must be a positive integer");
  } else if (name == "single-spike") {
    src.kind = WeightsSource::Kind::spike;
  } else {
    throw ConfigError("unknown weight generator: " + name);
  }
  return src;
}

WeightVector make_weights(const WeightsSource& source, std::size_t n,
                          Rng& rng) {
  if (n == 0) throw ConfigError("N must be positive");
  switch (source.kind) {
    case WeightsSource::Kind::file:
      return WeightVector::from_file(source.path);
    case WeightsSource::Kind::uniform:
      return WeightVector(std::vector<double>(n, 1.0));
    case WeightsSource::Kind::zipf: {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = std::pow(static_cast<double>(i + 1), -source.param);
      return WeightVector(std::move(w));
    }
    case WeightsSource::Kind::binary: {
      const auto ones = static_cast<std::size_t>(source.param);
      if (ones > n) throw ConfigError("binary ones count exceeds N");
      std::vector<std::size_t> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      std::vector<double> w(n, 0.0);
      for (std::size_t c = 0; c < ones; ++c) {
        const std::size_t pick =
            c + static_cast<std::size_t>(rng.uniform_index(n - c));
        std::swap(pool[c], pool[pick]);
        w[pool[c]] = 1.0;
      }
      return WeightVector(std::move(w));
    }
    case WeightsSource::Kind::spike: {
      std::vector<double> w(n, 0.0);
      w[0] = 1.0;
      return WeightVector(std::move(w));
    }
  }
  throw ConfigError("unhandled weights source");
}

int experiment_threads() {
  if (const char* env = std::getenv("QSPREP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty() || cfg.k_values.empty())
    throw ConfigError("N and K lists must be non-empty");
  for (std::size_t n : cfg.n_values)
    if (n == 0) throw ConfigError("N values must be positive");
  for (std::size_t k : cfg.k_values)
    if (k == 0) throw ConfigError("K values must be positive");
  const std::size_t min_n =
      *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
  const std::size_t max_k =
      *std::max_element(cfg.k_values.begin(), cfg.k_values.end());
  if (max_k > min_n)
    throw ConfigError("K exceeds N for some sweep cell (K <= N pairwise)");
  if (cfg.trials == 0) throw ConfigError("trials must be positive");
  if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0))
    throw ConfigError("delta must be in (0, 1)");
  if (cfg.mode == Mode::reduction_demo) {
    if (cfg.weights.kind != WeightsSource::Kind::binary &&
        cfg.weights.kind != WeightsSource::Kind::file)
      throw ConfigError("reduction-demo needs binary weights");
    if (cfg.weights.kind == WeightsSource::Kind::binary &&
        static_cast<std::size_t>(cfg.weights.param) < 2 * max_k)
      throw ConfigError("reduction-demo needs at least 2K ones");
  }
}

double measured_tv(const std::vector<QuantumState>& copies,
                   const WeightVector& w, Rng& rng) {
  std::vector<std::size_t> samples;
  samples.reserve(copies.size());
  for (const QuantumState& s : copies)
    samples.push_back(measure(s, "out", rng).first);
  return empirical_tv(samples, w);
}

RunRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t k,
                    std::size_t trial, const WeightVector* file_weights,
                    double* demo_distinct) {
  RunRecord rec;
  rec.mode = mode_name(cfg.mode);
  rec.n = n;
  rec.k = k;
  rec.delta = cfg.delta;
  rec.trial = trial;
  rec.seed = mix_seed(cfg.seed, n, k, trial);

  Rng weights_rng(mix_seed(rec.seed, 1));
  Rng rng(mix_seed(rec.seed, 2));
  const WeightVector w = file_weights
                             ? *file_weights
                             : make_weights(cfg.weights, n, weights_rng);
  if (w.size() != n)
    throw ConfigError("weights file length does not match N");

  switch (cfg.mode) {
    case Mode::pipeline: {
      auto [states, stats] = prepare_k_copies(w, k, cfg.delta, rng);
      rec.prep_queries = stats.preprocessing_queries;
      rec.total_queries = stats.total_queries;
      rec.copy_queries_mean =
          static_cast<double>(rec.total_queries - rec.prep_queries) /
          static_cast<double>(k);
      rec.fidelity_min =
          *std::min_element(stats.fidelities.begin(), stats.fidelities.end());
      rec.tv = measured_tv(states, w, rng);
      break;
    }
    case Mode::baseline: {
      auto [states, total] = naive_k_copies(w, k, w.max_entry(), rng);
      rec.prep_queries = 0;
      rec.total_queries = total;
      rec.copy_queries_mean =
          static_cast<double>(total) / static_cast<double>(k);
      const QuantumState target = state_from_weights(w);
      double fid_min = 1.0;
      for (const QuantumState& s : states)
        fid_min = std::min(fid_min, fidelity(s, target));
      rec.fidelity_min = fid_min;
      rec.tv = measured_tv(states, w, rng);
      break;
    }
    case Mode::topk: {
      QueryCounter counter;
      TopKResult top = top_k_positions(w, k, cfg.delta, rng, counter);
      rec.prep_queries = top.queries_used;
      rec.total_queries = top.queries_used;
      rec.copy_queries_mean = 0.0;
      rec.fidelity_min = top.succeeded ? 1.0 : 0.0;
      rec.tv = 0.0;
      break;
    }
    case Mode::sampling: {
      auto [samples, stats] = importance_sample(w, k, cfg.delta, rng);
      rec.prep_queries = stats.preprocessing_queries;
      rec.total_queries = stats.total_queries;
      rec.copy_queries_mean =
          static_cast<double>(rec.total_queries - rec.prep_queries) /
          static_cast<double>(k);
      rec.fidelity_min =
          *std::min_element(stats.fidelities.begin(), stats.fidelities.end());
      rec.tv = empirical_tv(samples, w);
      break;
    }
    case Mode::reduction_demo: {
      std::vector<std::uint8_t> bits(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 0.0 && w[i] != 1.0)
          throw ConfigError("reduction-demo weights must be 0/1");
        bits[i] = static_cast<std::uint8_t>(w[i]);
      }
      PipelineStats stats;
      const std::size_t copies = 3 * k;
      auto found = ksearch_reduction_demo(bits, k, copies, rng, &stats);
      rec.prep_queries = stats.preprocessing_queries;
      rec.total_queries = stats.total_queries;
      rec.copy_queries_mean =
          static_cast<double>(rec.total_queries - rec.prep_queries) /
          static_cast<double>(copies);
      rec.fidelity_min = stats.fidelities.empty()
                             ? 1.0
                             : *std::min_element(stats.fidelities.begin(),
                                                 stats.fidelities.end());
      rec.tv = 0.0;
      if (demo_distinct) *demo_distinct = static_cast<double>(found.size());
      break;
    }
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                      std::vector<double>* demo_distinct) {
  validate_config(cfg);

  WeightVector file_weights({1.0});
  const WeightVector* file_ptr = nullptr;
  if (cfg.weights.kind == WeightsSource::Kind::file) {
    file_weights = WeightVector::from_file(cfg.weights.path);
    file_ptr = &file_weights;
    for (std::size_t n : cfg.n_values)
      if (n != file_weights.size())
        throw ConfigError("N list must match the weights file length");
  }

  const std::size_t cells = cfg.n_values.size() * cfg.k_values.size();
  const std::size_t total = cells * cfg.trials;
  std::vector<RunRecord> records(total);
  if (demo_distinct) demo_distinct->assign(total, 0.0);
  std::string first_error;

  const int threads = experiment_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) \
    if (threads > 1 && total > 1)
#endif
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const std::size_t trial = u % cfg.trials;
    const std::size_t cell = u / cfg.trials;
    const std::size_t ki = cell % cfg.k_values.size();
    const std::size_t ni = cell / cfg.k_values.size();
    try {
      records[u] = run_trial(cfg, cfg.n_values[ni], cfg.k_values[ki], trial,
                             file_ptr,
                             demo_distinct ? &(*demo_distinct)[u] : nullptr);
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (first_error.empty()) first_error = e.what();
    }
  }
  (void)threads;
  if (!first_error.empty()) throw std::runtime_error(first_error);

  if (!cfg.out_path.empty()) write_csv(cfg.out_path, records);
  return records;
}

void write_csv(const std::string& path, const std::vector<RunRecord>& records) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    out << kCsvHeader << "\n";
    for (const RunRecord& r : records) {
      out << r.mode << ',' << r.n << ',' << r.k << ',' << fmt_double(r.delta)
          << ',' << r.seed << ',' << r.trial << ',' << r.prep_queries << ','
          << fmt_double(r.copy_queries_mean) << ',' << r.total_queries << ','
          << fmt_double(r.fidelity_min) << ',' << fmt_double(r.tv) << ','
          << fmt_double(r.wall_ms) << "\n";
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<RunRecord> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unexpected CSV header in " + path);
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 12)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 12 columns");
    RunRecord r;
    r.mode = fields[0];
    r.n = std::stoull(fields[1]);
    r.k = std::stoull(fields[2]);
    r.delta = std::stod(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.trial = std::stoull(fields[5]);
    r.prep_queries = std::stoull(fields[6]);
    r.copy_queries_mean = std::stod(fields[7]);
    r.total_queries = std::stoull(fields[8]);
    r.fidelity_min = std::stod(fields[9]);
    r.tv = std::stod(fields[10]);
    r.wall_ms = std::stod(fields[11]);

    const double copies =
        r.mode == "reduction-demo" ? 3.0 * static_cast<double>(r.k)
                                   : static_cast<double>(r.k);
    const double expected = static_cast<double>(r.prep_queries) +
                            r.copy_queries_mean * copies;
    const double scale = std::max(1.0, static_cast<double>(r.total_queries));
    if (std::abs(expected - static_cast<double>(r.total_queries)) >
        1e-6 * scale)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": total_q does not decompose into its parts");
    records.push_back(std::move(r));
  }
  return records;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_exponent: need at least 3 points");
  std::vector<double> lx(points.size()), ly(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
      throw std::invalid_argument("fit_exponent: coordinates must be positive");
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_exponent: all x values coincide");
  FitResult fit;
  fit.slope = sxy / sxx;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // exact constant law
  } else {
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

namespace {

std::map<double, double> mean_by(
    const std::vector<const RunRecord*>& rows,
    double (*key)(const RunRecord&), double (*value)(const RunRecord&)) {
  std::map<double, std::pair<double, std::size_t>> acc;
  for (const RunRecord* r : rows) {
    auto& slot = acc[key(*r)];
    slot.first += value(*r);
    slot.second += 1;
  }
  std::map<double, double> means;
  for (const auto& [k, v] : acc)
    means[k] = v.first / static_cast<double>(v.second);
  return means;
}

void add_fit(nlohmann::json& fits, const std::string& quantity,
             const std::string& axis, const std::string& fixed_name,
             double fixed_value, const std::map<double, double>& means) {
  if (means.size() < 3) return;
  std::vector<std::pair<double, double>> points;
  for (const auto& [x, y] : means)
    if (y > 0.0) points.emplace_back(x, y);
  if (points.size() < 3) return;
  const FitResult fit = fit_exponent(points);
  nlohmann::json entry;
  entry["quantity"] = quantity;
  entry["axis"] = axis;
  entry[fixed_name] = fixed_value;
  entry["slope"] = fit.slope;
  entry["r2"] = fit.r2;
  entry["points"] = nlohmann::json::array();
  for (const auto& [x, y] : points) entry["points"].push_back({x, y});
  fits.push_back(entry);
}

}  // namespace

std::string fit_summary_json(const std::vector<RunRecord>& records) {
  nlohmann::json fits = nlohmann::json::array();
  std::vector<std::size_t> ks, ns;
  for (const RunRecord& r : records) {
    ks.push_back(r.k);
    ns.push_back(r.n);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  for (std::size_t k : ks) {
    std::vector<const RunRecord*> rows;
    for (const RunRecord& r : records)
      if (r.k == k) rows.push_back(&r);
    add_fit(fits, "prep_q", "N", "K", static_cast<double>(k),
            mean_by(
                rows, [](const RunRecord& r) { return double(r.n); },
                [](const RunRecord& r) { return double(r.prep_queries); }));
    add_fit(fits, "total_q", "N", "K", static_cast<double>(k),
            mean_by(
                rows, [](const RunRecord& r) { return double(r.n); },
                [](const RunRecord& r) { return double(r.total_queries); }));
  }
  for (std::size_t n : ns) {
    std::vector<const RunRecord*> rows;
    for (const RunRecord& r : records)
      if (r.n == n) rows.push_back(&r);
    add_fit(fits, "copy_q_mean", "K", "N", static_cast<double>(n),
            mean_by(
                rows, [](const RunRecord& r) { return double(r.k); },
                [](const RunRecord& r) { return r.copy_queries_mean; }));
  }
  nlohmann::json summary;
  summary["fits"] = fits;
  return summary.dump(2);
}

}  // namespace qsprep
