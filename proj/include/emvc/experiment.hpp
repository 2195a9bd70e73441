#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "emvc/baselines.hpp"
#include "emvc/dataset.hpp"
#include "emvc/errors.hpp"
#include "emvc/graph.hpp"
#include "emvc/kmeans.hpp"
#include "emvc/metrics.hpp"
#include "emvc/solver.hpp"

namespace emvc {

enum class Method { kEmvc, kBestSingleView, kFeatureConcat, kKernelAddition };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kEmvc: return "emvc";
    case Method::kBestSingleView: return "best_single_view";
    case Method::kFeatureConcat: return "feature_concat";
    case Method::kKernelAddition: return "kernel_addition";
  }
  throw ConfigError("method_name: unknown method");
}

inline Method method_from_name(const std::string& name) {
  if (name == "emvc") return Method::kEmvc;
  if (name == "best_single_view" || name == "bsv") return Method::kBestSingleView;
  if (name == "feature_concat") return Method::kFeatureConcat;
  if (name == "kernel_addition") return Method::kKernelAddition;
  throw ConfigError("unknown method: " + name);
}

inline const char* sigma_mode_name(SigmaMode mode) {
  return mode == SigmaMode::kMedianSquared ? "median_squared" : "median_raw";
}

inline SigmaMode sigma_mode_from_name(const std::string& name) {
  if (name == "median_squared") return SigmaMode::kMedianSquared;
  if (name == "median_raw") return SigmaMode::kMedianRaw;
  throw ConfigError("unknown sigma mode: " + name);
}

enum class InjectionKind { kNone, kGaussianSnr, kSampleFraction };

struct ExperimentConfig {
  // dataset: CSV views with a labels file, or the built-in synthetic generator
  std::vector<std::string> view_files;
  std::string label_file;
  int synthetic_per_cluster = 0;  // > 0 selects the generator

  std::vector<Method> methods = {Method::kEmvc, Method::kBestSingleView,
                                 Method::kFeatureConcat, Method::kKernelAddition};
  int k = 2;
  EmvcConfig emvc;
  KMeansConfig kmeans;
  SigmaMode sigma_mode = SigmaMode::kMedianSquared;
  InjectionKind injection = InjectionKind::kNone;
  double snr = 1.0;
  double corrupt_fraction = 0.02;
  int repetitions = 1;
  std::string out;  // report path prefix; empty keeps results in memory
  std::uint64_t seed = 0;

  void validate() const {
    const bool files = !view_files.empty();
    const bool synthetic = synthetic_per_cluster > 0;
    if (files == synthetic) {
      throw ConfigError(
          "experiment: choose exactly one of view files or the synthetic "
          "generator");
    }
    if (files && label_file.empty()) {
      throw ConfigError(
          "experiment: a labels file is required; metrics compare against "
          "ground truth");
    }
    if (methods.empty()) {
      throw ConfigError("experiment: method list is empty");
    }
    if (k < 2) {
      throw ConfigError("experiment: need at least two clusters");
    }
    if (repetitions < 1) {
      throw ConfigError("experiment: repetitions must be >= 1");
    }
    if (injection == InjectionKind::kGaussianSnr && !(snr > 0.0)) {
      throw ConfigError("experiment: snr must be positive");
    }
    if (injection == InjectionKind::kSampleFraction &&
        !(corrupt_fraction > 0.0 && corrupt_fraction < 1.0)) {
      throw ConfigError("experiment: corrupt fraction must lie in (0, 1)");
    }
    emvc.validate();
    kmeans.validate();
  }
};

struct RepRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
  // solver diagnostics, present for the decomposition method only
  bool has_solver_info = false;
  bool converged = false;
  int iterations = 0;
  int chosen_view = -1;  // best_single_view only
};

struct MethodSummary {
  Method method = Method::kEmvc;
  bool all_ok = false;
  MetricsReport mean;
  MetricsReport stddev;
  std::vector<RepRecord> reps;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<MethodSummary> methods;
  bool all_ok = false;
  std::string tsv;
  std::string json;
};

namespace detail {

inline std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string format_compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  if (cfg.synthetic_per_cluster > 0) {
    j["dataset"] = {{"type", "synthetic"},
                    {"n_per_cluster", cfg.synthetic_per_cluster}};
  } else {
    j["dataset"] = {{"type", "files"},
                    {"views", cfg.view_files},
                    {"labels", cfg.label_file}};
  }
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (Method m : cfg.methods) {
    methods.push_back(method_name(m));
  }
  j["methods"] = std::move(methods);
  j["clusters"] = cfg.k;
  j["emvc"] = {{"lambda", cfg.emvc.lambda},     {"beta", cfg.emvc.beta},
               {"mu0", cfg.emvc.mu0},           {"rho", cfg.emvc.rho},
               {"mu_max", cfg.emvc.mu_max},     {"eps", cfg.emvc.eps},
               {"max_iters", cfg.emvc.max_iters},
               {"reweight_eps", cfg.emvc.reweight_eps}};
  j["kmeans"] = {{"restarts", cfg.kmeans.restarts},
                 {"max_iters", cfg.kmeans.max_iters},
                 {"tol", cfg.kmeans.tol}};
  j["sigma_mode"] = sigma_mode_name(cfg.sigma_mode);
  switch (cfg.injection) {
    case InjectionKind::kNone:
      j["injection"] = {{"kind", "none"}};
      break;
    case InjectionKind::kGaussianSnr:
      j["injection"] = {{"kind", "gaussian_snr"}, {"snr", cfg.snr}};
      break;
    case InjectionKind::kSampleFraction:
      j["injection"] = {{"kind", "sample_fraction"},
                        {"fraction", cfg.corrupt_fraction}};
      break;
  }
  j["repetitions"] = cfg.repetitions;
  j["seed"] = cfg.seed;
  return j;
}

inline nlohmann::ordered_json metrics_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  for (const auto& [name, member] : metric_fields()) {
    j[name] = r.*member;
  }
  return j;
}

inline std::string render_tsv(const ExperimentConfig& cfg,
                              const std::vector<MethodSummary>& methods) {
  std::string out;
  out += "# multi-view clustering benchmark report\n";
  out += "# config: " + config_json(cfg).dump() + "\n";
  out += "method\tstatus";
  for (const auto& [name, member] : metric_fields()) {
    out += '\t';
    out += name;
    out += "_mean\t";
    out += name;
    out += "_std";
  }
  out += '\n';
  for (const MethodSummary& m : methods) {
    out += method_name(m.method);
    out += m.all_ok ? "\tok" : "\terror";
    for (const auto& [name, member] : metric_fields()) {
      out += '\t';
      out += format_fixed(m.mean.*member);
      out += '\t';
      out += format_fixed(m.stddev.*member);
    }
    out += '\n';
  }
  return out;
}

inline std::string render_json(const ExperimentConfig& cfg,
                               const std::vector<MethodSummary>& methods) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  nlohmann::ordered_json method_rows = nlohmann::ordered_json::array();
  for (const MethodSummary& m : methods) {
    nlohmann::ordered_json row;
    row["method"] = method_name(m.method);
    row["status"] = m.all_ok ? "ok" : "error";
    row["mean"] = metrics_json(m.mean);
    row["std"] = metrics_json(m.stddev);
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const RepRecord& r : m.reps) {
      nlohmann::ordered_json rep;
      rep["rep"] = r.rep;
      rep["seed"] = r.seed;
      rep["status"] = r.ok ? "ok" : "error";
      if (r.ok) {
        rep["metrics"] = metrics_json(r.metrics);
        if (r.has_solver_info) {
          rep["converged"] = r.converged;
          rep["iterations"] = r.iterations;
        }
        if (r.chosen_view >= 0) {
          rep["chosen_view"] = r.chosen_view;
        }
      } else {
        rep["error"] = r.error;
      }
      reps.push_back(std::move(rep));
    }
    row["repetitions"] = std::move(reps);
    method_rows.push_back(std::move(row));
  }
  j["methods"] = std::move(method_rows);
  return j.dump(2) + "\n";
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open report file for writing: " + path);
  }
  out << content;
}

inline void aggregate(MethodSummary& summary) {
  int ok = 0;
  MetricsReport sum;
  for (const RepRecord& r : summary.reps) {
    if (!r.ok) continue;
    ++ok;
    for (const auto& [name, member] : metric_fields()) {
      sum.*member += r.metrics.*member;
    }
  }
  summary.all_ok = ok == static_cast<int>(summary.reps.size());
  if (ok == 0) {
    return;
  }
  for (const auto& [name, member] : metric_fields()) {
    summary.mean.*member = sum.*member / ok;
  }
  MetricsReport sq;
  for (const RepRecord& r : summary.reps) {
    if (!r.ok) continue;
    for (const auto& [name, member] : metric_fields()) {
      const double d = r.metrics.*member - summary.mean.*member;
      sq.*member += d * d;
    }
  }
  for (const auto& [name, member] : metric_fields()) {
    summary.stddev.*member = std::sqrt(sq.*member / ok);
  }
}

inline RepRecord run_method(Method method, const MultiViewDataset& ds,
                            const ExperimentConfig& cfg, int rep,
                            std::uint64_t rep_seed,
                            const std::vector<TransitionMatrix>& transitions) {
  RepRecord record;
  record.rep = rep;
  record.seed = rep_seed;
  KMeansConfig kmeans_cfg = cfg.kmeans;
  kmeans_cfg.k = cfg.k;
  kmeans_cfg.seed = rep_seed;
  try {
    Labels labels;
    switch (method) {
      case Method::kEmvc: {
        EmvcConfig emvc_cfg = cfg.emvc;
        emvc_cfg.seed = rep_seed;
        SolverState state;
        labels = cluster(transitions, emvc_cfg, kmeans_cfg, cfg.k, &state).labels;
        record.has_solver_info = true;
        record.converged = state.converged;
        record.iterations = state.iter;
        break;
      }
      case Method::kBestSingleView: {
        auto [result, view] = best_single_view(ds, cfg.k, kmeans_cfg);
        labels = std::move(result.labels);
        record.chosen_view = view;
        break;
      }
      case Method::kFeatureConcat:
        labels = feature_concat(ds, cfg.k, kmeans_cfg).labels;
        break;
      case Method::kKernelAddition:
        labels = kernel_addition(ds, cfg.k, kmeans_cfg, cfg.sigma_mode).labels;
        break;
    }
    record.metrics = evaluate(labels, *ds.labels);
    record.ok = true;
  } catch (const std::exception& e) {
    record.ok = false;
    record.error = e.what();
  }
  return record;
}

}  // namespace detail

// Runs every requested method over seeded repetitions and aggregates the
// per-method metric means and population standard deviations. Reports are
// written as <out>.tsv and <out>.json when an output prefix is set.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  MultiViewDataset file_data;
  if (!cfg.view_files.empty()) {
    file_data = load_views(cfg.view_files, cfg.label_file);
    if (!file_data.labels.has_value()) {
      throw ConfigError("experiment: the labels file produced no labels");
    }
  }

  const bool wants_emvc =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::kEmvc) !=
      cfg.methods.end();

  ExperimentResult result;
  result.config = cfg;
  result.methods.resize(cfg.methods.size());
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    result.methods[m].method = cfg.methods[m];
  }

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t rep_seed = cfg.seed + static_cast<std::uint64_t>(rep);
    MultiViewDataset ds = cfg.synthetic_per_cluster > 0
                              ? synthetic_two_view(cfg.synthetic_per_cluster,
                                                   rep_seed)
                              : file_data;
    switch (cfg.injection) {
      case InjectionKind::kNone:
        break;
      case InjectionKind::kGaussianSnr:
        ds = inject_gaussian_noise(ds, cfg.snr, rep_seed);
        break;
      case InjectionKind::kSampleFraction:
        ds = inject_sample_corruption(ds, cfg.corrupt_fraction, rep_seed).first;
        break;
    }

    std::vector<TransitionMatrix> transitions;
    std::string transition_error;
    if (wants_emvc) {
      try {
        transitions.reserve(ds.views.size());
        for (const Eigen::MatrixXd& x : ds.views) {
          transitions.push_back(transition_matrix(x, cfg.sigma_mode));
        }
      } catch (const std::exception& e) {
        transition_error = e.what();
      }
    }

    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      if (cfg.methods[m] == Method::kEmvc && !transition_error.empty()) {
        RepRecord record;
        record.rep = rep;
        record.seed = rep_seed;
        record.error = transition_error;
        result.methods[m].reps.push_back(std::move(record));
        continue;
      }
      result.methods[m].reps.push_back(detail::run_method(
          cfg.methods[m], ds, cfg, rep, rep_seed, transitions));
    }
  }

  result.all_ok = true;
  for (MethodSummary& summary : result.methods) {
    detail::aggregate(summary);
    result.all_ok = result.all_ok && summary.all_ok;
  }
  result.tsv = detail::render_tsv(cfg, result.methods);
  result.json = detail::render_json(cfg, result.methods);
  if (!cfg.out.empty()) {
    detail::write_text(cfg.out + ".tsv", result.tsv);
    detail::write_text(cfg.out + ".json", result.json);
  }
  return result;
}

struct SweepRow {
  double lambda = 0.0;
  double beta = 0.0;
  bool ok = false;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool all_ok = false;
  std::string tsv;
  std::string json;
};

// Grid search over the decomposition penalties; each cell runs the full
// experiment protocol with only the decomposition method enabled. Row order
// is lambda-major, beta-minor.
inline SweepResult sweep(const ExperimentConfig& cfg,
                         const std::vector<double>& lambda_grid,
                         const std::vector<double>& beta_grid) {
  if (lambda_grid.empty() || beta_grid.empty()) {
    throw ConfigError("sweep: penalty grids must be non-empty");
  }
  ExperimentConfig base = cfg;
  base.methods = {Method::kEmvc};
  base.out.clear();
  base.validate();

  SweepResult result;
  for (double lambda : lambda_grid) {
    for (double beta : beta_grid) {
      ExperimentConfig cell = base;
      cell.emvc.lambda = lambda;
      cell.emvc.beta = beta;
      const ExperimentResult r = run_experiment(cell);
      SweepRow row;
      row.lambda = lambda;
      row.beta = beta;
      row.ok = r.all_ok;
      row.accuracy_mean = r.methods.front().mean.accuracy;
      row.accuracy_std = r.methods.front().stddev.accuracy;
      result.rows.push_back(row);
    }
  }
  result.all_ok = true;
  for (const SweepRow& row : result.rows) {
    result.all_ok = result.all_ok && row.ok;
  }

  std::string tsv;
  tsv += "# penalty grid sweep\n";
  tsv += "# config: " + detail::config_json(base).dump() + "\n";
  tsv += "lambda\tbeta\tstatus\taccuracy_mean\taccuracy_std\n";
  for (const SweepRow& row : result.rows) {
    tsv += detail::format_compact(row.lambda);
    tsv += '\t';
    tsv += detail::format_compact(row.beta);
    tsv += row.ok ? "\tok" : "\terror";
    tsv += '\t';
    tsv += detail::format_fixed(row.accuracy_mean);
    tsv += '\t';
    tsv += detail::format_fixed(row.accuracy_std);
    tsv += '\n';
  }
  result.tsv = std::move(tsv);

  nlohmann::ordered_json j;
  j["config"] = detail::config_json(base);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back({{"lambda", row.lambda},
                    {"beta", row.beta},
                    {"status", row.ok ? "ok" : "error"},
                    {"accuracy_mean", row.accuracy_mean},
                    {"accuracy_std", row.accuracy_std}});
  }
  j["grid"] = std::move(rows);
  result.json = j.dump(2) + "\n";

  if (!cfg.out.empty()) {
    detail::write_text(cfg.out + ".tsv", result.tsv);
    detail::write_text(cfg.out + ".json", result.json);
  }
  return result;
}

}  // namespace emvc
