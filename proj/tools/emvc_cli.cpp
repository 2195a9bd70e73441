#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emvc/dataset.hpp"
#include "emvc/experiment.hpp"

namespace {

struct CommonOptions {
  std::vector<std::string> dataset;
  std::string labels;
  int synthetic = 0;
  std::vector<std::string> methods;
  int clusters = 2;
  double lambda = 1.0;
  double beta = 1.0;
  double eps = 1e-8;
  int max_iters = 300;
  std::string sigma_mode = "median_squared";
  double snr = 0.0;
  double corrupt_fraction = 0.0;
  int reps = 1;
  std::uint64_t seed = 0;
  std::string out;
};

void add_common_options(CLI::App& cmd, CommonOptions& opt, bool with_methods) {
  cmd.fallthrough();
  cmd.add_option("--dataset", opt.dataset,
                 "comma-separated view CSV files (one matrix per view)")
      ->delimiter(',');
  cmd.add_option("--labels", opt.labels, "ground-truth label CSV (one column)");
  cmd.add_option("--synthetic", opt.synthetic,
                 "use the built-in two-view generator with N samples per cluster");
  if (with_methods) {
    cmd.add_option("--methods", opt.methods,
                   "methods to run: emvc, best_single_view, feature_concat, "
                   "kernel_addition (default: all)")
        ->delimiter(',');
  }
  cmd.add_option("--clusters", opt.clusters, "number of clusters")
      ->capture_default_str();
  cmd.add_option("--lambda", opt.lambda, "group-sparsity penalty")
      ->capture_default_str();
  cmd.add_option("--beta", opt.beta, "row-sparsity penalty")
      ->capture_default_str();
  cmd.add_option("--eps", opt.eps, "solver feasibility tolerance")
      ->capture_default_str();
  cmd.add_option("--max-iters", opt.max_iters, "solver iteration cap")
      ->capture_default_str();
  cmd.add_option("--sigma-mode", opt.sigma_mode,
                 "kernel bandwidth rule: median_squared or median_raw")
      ->capture_default_str();
  cmd.add_option("--snr", opt.snr,
                 "inject white Gaussian noise at this signal-to-noise ratio");
  cmd.add_option("--corrupt-fraction", opt.corrupt_fraction,
                 "replace this fraction of samples with gross outliers");
  cmd.add_option("--reps", opt.reps, "number of seeded repetitions")
      ->capture_default_str();
  cmd.add_option("--seed", opt.seed, "master seed; repetition r uses seed + r")
      ->capture_default_str();
  cmd.add_option("--out", opt.out, "report path prefix (writes .tsv and .json)")
      ->required();
}

void ensure_parent_dir(const std::string& out_prefix) {
  const std::filesystem::path parent =
      std::filesystem::path(out_prefix).parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent);
  }
}

emvc::ExperimentConfig to_config(const CommonOptions& opt) {
  emvc::ExperimentConfig cfg;
  cfg.view_files = opt.dataset;
  cfg.label_file = opt.labels;
  cfg.synthetic_per_cluster = opt.synthetic;
  if (!opt.methods.empty()) {
    cfg.methods.clear();
    for (const std::string& name : opt.methods) {
      cfg.methods.push_back(emvc::method_from_name(name));
    }
  }
  cfg.k = opt.clusters;
  cfg.emvc.lambda = opt.lambda;
  cfg.emvc.beta = opt.beta;
  cfg.emvc.eps = opt.eps;
  cfg.emvc.max_iters = opt.max_iters;
  cfg.sigma_mode = emvc::sigma_mode_from_name(opt.sigma_mode);
  if (opt.snr > 0.0 && opt.corrupt_fraction > 0.0) {
    throw emvc::ConfigError("choose either --snr or --corrupt-fraction");
  }
  if (opt.snr > 0.0) {
    cfg.injection = emvc::InjectionKind::kGaussianSnr;
    cfg.snr = opt.snr;
  } else if (opt.corrupt_fraction > 0.0) {
    cfg.injection = emvc::InjectionKind::kSampleFraction;
    cfg.corrupt_fraction = opt.corrupt_fraction;
  }
  cfg.repetitions = opt.reps;
  cfg.seed = opt.seed;
  cfg.out = opt.out;
  return cfg;
}

int run_command(const CommonOptions& opt) {
  const emvc::ExperimentConfig cfg = to_config(opt);
  ensure_parent_dir(cfg.out);
  const emvc::ExperimentResult result = emvc::run_experiment(cfg);
  std::cout << result.tsv;
  std::cout << "wrote " << cfg.out << ".tsv and " << cfg.out << ".json\n";
  return result.all_ok ? 0 : 2;
}

int sweep_command(const CommonOptions& opt, const std::vector<double>& lambda_grid,
                  const std::vector<double>& beta_grid) {
  const emvc::ExperimentConfig cfg = to_config(opt);
  ensure_parent_dir(cfg.out);
  const emvc::SweepResult result = emvc::sweep(cfg, lambda_grid, beta_grid);
  std::cout << result.tsv;
  std::cout << "wrote " << cfg.out << ".tsv and " << cfg.out << ".json\n";
  return result.all_ok ? 0 : 2;
}

int synth_command(int per_cluster, std::uint64_t seed, double snr,
                  double corrupt_fraction, const std::string& out) {
  emvc::MultiViewDataset ds = emvc::synthetic_two_view(per_cluster, seed);
  if (snr > 0.0 && corrupt_fraction > 0.0) {
    throw emvc::ConfigError("choose either --snr or --corrupt-fraction");
  }
  if (snr > 0.0) {
    ds = emvc::inject_gaussian_noise(ds, snr, seed);
  } else if (corrupt_fraction > 0.0) {
    ds = emvc::inject_sample_corruption(ds, corrupt_fraction, seed).first;
  }
  ensure_parent_dir(out);
  for (std::size_t v = 0; v < ds.views.size(); ++v) {
    const std::string path = out + "_view" + std::to_string(v + 1) + ".csv";
    emvc::save_matrix_csv(ds.views[v], path);
    std::cout << "wrote " << path << "\n";
  }
  emvc::save_labels(*ds.labels, out + "_labels.csv");
  std::cout << "wrote " << out << "_labels.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view clustering benchmark"};
  app.set_config("--config", "",
                 "INI file with [run]/[sweep]/[synth] sections; flags win");
  app.require_subcommand(1);

  CommonOptions run_opt;
  CLI::App* run = app.add_subcommand(
      "run", "run clustering methods and report metrics against ground truth");
  add_common_options(*run, run_opt, true);

  CommonOptions sweep_opt;
  std::vector<double> lambda_grid;
  std::vector<double> beta_grid;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "grid-search the decomposition penalties and report accuracy");
  add_common_options(*sweep, sweep_opt, false);
  sweep->add_option("--lambda-grid", lambda_grid, "lambda values to try")
      ->delimiter(',')
      ->required();
  sweep->add_option("--beta-grid", beta_grid, "beta values to try")
      ->delimiter(',')
      ->required();

  int synth_per_cluster = 0;
  std::uint64_t synth_seed = 0;
  double synth_snr = 0.0;
  double synth_fraction = 0.0;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate the two-view Gaussian dataset as CSV files");
  synth->fallthrough();
  synth->add_option("--synthetic", synth_per_cluster, "samples per cluster")
      ->required();
  synth->add_option("--seed", synth_seed, "generator seed")
      ->capture_default_str();
  synth->add_option("--snr", synth_snr, "optional Gaussian noise injection");
  synth->add_option("--corrupt-fraction", synth_fraction,
                    "optional sample corruption injection");
  synth->add_option("--out", synth_out, "output file prefix")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(run_opt);
    }
    if (sweep->parsed()) {
      return sweep_command(sweep_opt, lambda_grid, beta_grid);
    }
    if (synth->parsed()) {
      return synth_command(synth_per_cluster, synth_seed, synth_snr,
                           synth_fraction, synth_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
