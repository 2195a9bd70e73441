#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "emvc/errors.hpp"
#include "emvc/rng.hpp"

namespace emvc {

struct KMeansConfig {
  int k = 2;
  int restarts = 20;
  int max_iters = 300;
  double tol = 1e-9;
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 1 || restarts < 1 || max_iters < 1 || tol < 0) {
      throw ConfigError("KMeansConfig: invalid parameters");
    }
  }
};

struct KMeansResult {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  std::vector<double> restart_inertias;   // final inertia of each restart
  std::vector<double> inertia_history;    // per-iteration inertia of the best run
};

namespace detail {

struct LloydRun {
  std::vector<int> labels;
  double inertia;
  std::vector<double> history;
};

inline double squared_distance(const Eigen::MatrixXd& x, Eigen::Index i,
                               const Eigen::MatrixXd& centers, int c) {
  return (x.row(i) - centers.row(c)).squaredNorm();
}

inline Eigen::MatrixXd plus_plus_init(const Eigen::MatrixXd& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.uniform_int(n)));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d2(i) = (x.row(i) - centers.row(0)).squaredNorm();
  }
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double threshold = rng.uniform() * total;
      double cumsum = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cumsum += d2(i);
        if (cumsum > threshold) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.uniform_int(n));
    }
    centers.row(c) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

inline LloydRun lloyd(const Eigen::MatrixXd& x, const KMeansConfig& cfg, Rng& rng) {
  const Eigen::Index n = x.rows();
  const int k = cfg.k;
  Eigen::MatrixXd centers = plus_plus_init(x, k, rng);
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd point_d2(n);
  std::vector<double> history;

  for (int it = 0; it < cfg.max_iters; ++it) {
    // Assignment step; ties go to the lowest center index.
    bool changed = false;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = squared_distance(x, i, centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d2 = squared_distance(x, i, centers, c);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      if (labels[static_cast<std::size_t>(i)] != best) {
        labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
      point_d2(i) = best_d2;
      inertia += best_d2;
    }
    history.push_back(inertia);
    if (it > 0 && !changed) {
      break;
    }

    // Update step.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
      counts(labels[static_cast<std::size_t>(i)]) += 1;
    }
    Eigen::MatrixXd next = centers;
    for (int c = 0; c < k; ++c) {
      if (counts(c) > 0) {
        next.row(c) = sums.row(c) / counts(c);
      }
    }
    // Empty clusters grab the point farthest from its current center.
    Eigen::VectorXd claim_d2 = point_d2;
    for (int c = 0; c < k; ++c) {
      if (counts(c) == 0) {
        Eigen::Index far = 0;
        claim_d2.maxCoeff(&far);
        next.row(c) = x.row(far);
        claim_d2(far) = -1.0;
      }
    }
    const double moved = (next - centers).rowwise().norm().maxCoeff();
    centers = next;
    if (moved < cfg.tol) {
      break;
    }
  }

  // Final assignment against the final centers.
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    double best_d2 = squared_distance(x, i, centers, 0);
    for (int c = 1; c < k; ++c) {
      const double d2 = squared_distance(x, i, centers, c);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = c;
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    inertia += best_d2;
  }
  return LloydRun{std::move(labels), inertia, std::move(history)};
}

}  // namespace detail

// Lloyd's algorithm with k-means++ seeding; the best of cfg.restarts
// independent runs by inertia wins, earlier restart on ties.
inline KMeansResult kmeans(const Eigen::MatrixXd& x, const KMeansConfig& cfg) {
  cfg.validate();
  if (!x.allFinite()) {
    throw NumericalError("kmeans: non-finite input");
  }
  if (cfg.k > x.rows()) {
    throw ConfigError("kmeans: k exceeds the number of samples");
  }

  KMeansResult result;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    detail::LloydRun run = detail::lloyd(x, cfg, rng);
    result.restart_inertias.push_back(run.inertia);
    if (run.inertia < result.inertia) {
      result.inertia = run.inertia;
      result.labels = std::move(run.labels);
      result.inertia_history = std::move(run.history);
    }
  }
  return result;
}

}  // namespace emvc
