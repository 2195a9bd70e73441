#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emvc/errors.hpp"
#include "emvc/rng.hpp"

namespace emvc {

struct MultiViewDataset {
  std::vector<Eigen::MatrixXd> views;
  std::optional<std::vector<int>> labels;
  std::vector<std::string> names;

  Eigen::Index n() const { return views.empty() ? 0 : views.front().rows(); }
  int num_views() const { return static_cast<int>(views.size()); }

  void validate() const {
    if (views.empty()) {
      throw SchemaError("MultiViewDataset: no views");
    }
    for (const auto& v : views) {
      if (v.rows() != n()) {
        throw SchemaError("MultiViewDataset: views disagree on sample count");
      }
    }
    if (labels && static_cast<Eigen::Index>(labels->size()) != n()) {
      throw SchemaError("MultiViewDataset: label count does not match samples");
    }
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

inline bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end && !s.empty();
}

}  // namespace detail

// Plain numeric CSV: one sample per row, comma separated, optional single
// header line (detected by a non-numeric first line).
inline Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError("load_matrix_csv: cannot open " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  bool checked_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;  // blank line
    }
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (!checked_header) {
      checked_header = true;
      bool numeric = true;
      double tmp;
      for (const auto& f : fields) {
        if (!detail::parse_double(f, tmp)) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        continue;  // header line
      }
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw SchemaError("load_matrix_csv: ragged row at line " +
                        std::to_string(line_no) + " in " + path);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value;
      if (!detail::parse_double(fields[c], value) || !std::isfinite(value)) {
        throw ParseError("load_matrix_csv: bad cell in " + path, line_no,
                         static_cast<int>(c) + 1);
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw SchemaError("load_matrix_csv: no data rows in " + path);
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

// Writes with 17 significant digits so a reload reproduces the exact doubles.
inline void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw SchemaError("save_matrix_csv: cannot open " + path);
  }
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << buf << (c + 1 < m.cols() ? "," : "");
    }
    out << "\n";
  }
}

inline std::vector<int> load_labels(const std::string& path) {
  const Eigen::MatrixXd m = load_matrix_csv(path);
  if (m.cols() != 1) {
    throw SchemaError("load_labels: expected a single column in " + path);
  }
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double v = m(r, 0);
    if (v != std::floor(v)) {
      throw ParseError("load_labels: non-integer label in " + path,
                       static_cast<int>(r) + 1, 1);
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

inline void save_labels(const std::vector<int>& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw SchemaError("save_labels: cannot open " + path);
  }
  for (int v : labels) {
    out << v << "\n";
  }
}

// Loads one CSV per view plus an optional single-column label file; row i of
// every file refers to the same sample.
inline MultiViewDataset load_views(const std::vector<std::string>& paths,
                                   const std::optional<std::string>& label_path = {}) {
  if (paths.empty()) {
    throw ConfigError("load_views: no view files given");
  }
  MultiViewDataset ds;
  for (const auto& p : paths) {
    ds.views.push_back(load_matrix_csv(p));
    ds.names.push_back(std::filesystem::path(p).filename().string());
  }
  if (label_path) {
    ds.labels = load_labels(*label_path);
  }
  ds.validate();
  return ds;
}

// Two-view, two-cluster Gaussian mixture. Cluster c means are (1,1) and
// (2,2) in view 1 and swapped in view 2; the correlated covariance pairs with
// (view 1, cluster 1) and (view 2, cluster 2), the diagonal one with the
// other two combinations. n_per_cluster samples per cluster, labels attached.
inline MultiViewDataset synthetic_two_view(int n_per_cluster, std::uint64_t seed) {
  if (n_per_cluster < 1) {
    throw ConfigError("synthetic_two_view: need at least one sample per cluster");
  }
  const int n = 2 * n_per_cluster;
  Eigen::Matrix2d cov_corr;
  cov_corr << 1.0, 0.5, 0.5, 1.5;
  Eigen::Matrix2d cov_diag;
  cov_diag << 0.3, 0.0, 0.0, 0.6;
  const Eigen::Matrix2d chol_corr = cov_corr.llt().matrixL();
  const Eigen::Matrix2d chol_diag = cov_diag.llt().matrixL();

  const Eigen::Vector2d mean_low(1.0, 1.0);
  const Eigen::Vector2d mean_high(2.0, 2.0);

  MultiViewDataset ds;
  ds.views.assign(2, Eigen::MatrixXd(n, 2));
  ds.names = {"view1", "view2"};
  std::vector<int> labels(static_cast<std::size_t>(n));

  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const int cluster = i < n_per_cluster ? 0 : 1;
    labels[static_cast<std::size_t>(i)] = cluster;
    for (int view = 0; view < 2; ++view) {
      // view 1 / cluster 1 and view 2 / cluster 2 share the (1,1) mean and
      // the correlated covariance; the cross combinations get (2,2) and the
      // diagonal covariance
      const bool same = view == cluster;
      const Eigen::Matrix2d& chol = same ? chol_corr : chol_diag;
      const Eigen::Vector2d& mean = same ? mean_low : mean_high;
      const Eigen::Vector2d z(rng.normal(), rng.normal());
      ds.views[static_cast<std::size_t>(view)].row(i) = (mean + chol * z).transpose();
    }
  }
  ds.labels = std::move(labels);
  return ds;
}

// Adds white Gaussian noise per view with variance equal to that view's mean
// signal power divided by snr (linear power ratio).
inline MultiViewDataset inject_gaussian_noise(const MultiViewDataset& ds, double snr,
                                              std::uint64_t seed) {
  if (snr <= 0.0) {
    throw ConfigError("inject_gaussian_noise: snr must be positive");
  }
  MultiViewDataset out = ds;
  for (int v = 0; v < ds.num_views(); ++v) {
    const Eigen::MatrixXd& x = ds.views[static_cast<std::size_t>(v)];
    const double power = x.array().square().mean();
    const double sigma = std::sqrt(power / snr);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(v)));
    Eigen::MatrixXd& y = out.views[static_cast<std::size_t>(v)];
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      for (Eigen::Index j = 0; j < y.cols(); ++j) {
        y(i, j) += sigma * rng.normal();
      }
    }
  }
  return out;
}

// Replaces ceil(fraction * N) whole samples, in every view, with uniform
// values drawn from each feature's observed range. Returns the modified
// dataset and the sorted corrupted indices.
inline std::pair<MultiViewDataset, std::vector<int>> inject_sample_corruption(
    const MultiViewDataset& ds, double fraction, std::uint64_t seed) {
  if (fraction <= 0.0 || fraction >= 1.0) {
    throw ConfigError("inject_sample_corruption: fraction must be in (0, 1)");
  }
  const int n = static_cast<int>(ds.n());
  const int m = static_cast<int>(std::ceil(fraction * n));

  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  Rng pick(mix_seed(seed, 0));
  for (int t = 0; t < m; ++t) {
    const int j = t + static_cast<int>(pick.uniform_int(
                          static_cast<std::uint64_t>(n - t)));
    std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<int> corrupted(pool.begin(), pool.begin() + m);
  std::sort(corrupted.begin(), corrupted.end());

  MultiViewDataset out = ds;
  for (int v = 0; v < ds.num_views(); ++v) {
    const Eigen::MatrixXd& x = ds.views[static_cast<std::size_t>(v)];
    const Eigen::VectorXd lo = x.colwise().minCoeff();
    const Eigen::VectorXd hi = x.colwise().maxCoeff();
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(v) + 1));
    Eigen::MatrixXd& y = out.views[static_cast<std::size_t>(v)];
    for (int idx : corrupted) {
      for (Eigen::Index j = 0; j < y.cols(); ++j) {
        y(idx, j) = lo(j) + rng.uniform() * (hi(j) - lo(j));
      }
    }
  }
  return {std::move(out), std::move(corrupted)};
}

}  // namespace emvc
