#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

#include "emvc/dataset.hpp"
#include "emvc/errors.hpp"
#include "emvc/graph.hpp"
#include "emvc/kmeans.hpp"
#include "emvc/metrics.hpp"

namespace emvc {

// Arithmetic mean of the per-view Gaussian similarity matrices, each with
// its own bandwidth.
inline Eigen::MatrixXd average_similarity(
    const MultiViewDataset& ds, SigmaMode mode = SigmaMode::kMedianSquared) {
  ds.validate();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(ds.n(), ds.n());
  for (const Eigen::MatrixXd& x : ds.views) {
    sum += similarity_matrix(x, kernel_bandwidth(x, mode));
  }
  return sum / static_cast<double>(ds.num_views());
}

// k-means on the horizontal concatenation of all views.
inline ClusteringResult feature_concat(const MultiViewDataset& ds, int k,
                                       KMeansConfig kmeans_cfg) {
  ds.validate();
  Eigen::Index width = 0;
  for (const Eigen::MatrixXd& x : ds.views) {
    width += x.cols();
  }
  Eigen::MatrixXd stacked(ds.n(), width);
  Eigen::Index at = 0;
  for (const Eigen::MatrixXd& x : ds.views) {
    stacked.middleCols(at, x.cols()) = x;
    at += x.cols();
  }
  kmeans_cfg.k = k;
  ClusteringResult out;
  out.labels = kmeans(stacked, kmeans_cfg).labels;
  return out;
}

// Spectral clustering on the averaged kernel: symmetric-normalized affinity,
// top-k eigenvectors, row-normalized embedding, k-means.
inline ClusteringResult kernel_addition(const MultiViewDataset& ds, int k,
                                        KMeansConfig kmeans_cfg,
                                        SigmaMode mode = SigmaMode::kMedianSquared) {
  const Eigen::MatrixXd s = average_similarity(ds, mode);
  const Eigen::Index n = s.rows();
  if (k > n) {
    throw ConfigError("kernel_addition: more clusters than samples");
  }
  // every view contributes a unit diagonal, so degrees stay >= 1
  const Eigen::VectorXd inv_sqrt =
      s.rowwise().sum().array().rsqrt().matrix();
  Eigen::MatrixXd w = inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal();
  w = 0.5 * (w + w.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("kernel_addition: eigendecomposition failed");
  }
  Eigen::MatrixXd embed = eig.eigenvectors().rightCols(k);
  for (Eigen::Index c = 0; c < embed.cols(); ++c) {
    Eigen::Index idx = 0;
    embed.col(c).cwiseAbs().maxCoeff(&idx);
    if (embed(idx, c) < 0.0) {
      embed.col(c) = -embed.col(c);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = embed.row(i).norm();
    if (norm > 0.0) {
      embed.row(i) /= norm;
    }
  }
  kmeans_cfg.k = k;
  ClusteringResult out;
  out.labels = kmeans(embed, kmeans_cfg).labels;
  return out;
}

// k-means on each view separately; keeps the view whose assignment scores
// the highest accuracy against the ground truth, together with its index.
inline std::pair<ClusteringResult, int> best_single_view(
    const MultiViewDataset& ds, int k, KMeansConfig kmeans_cfg) {
  ds.validate();
  if (!ds.labels.has_value()) {
    throw ConfigError("best_single_view: ground-truth labels required");
  }
  kmeans_cfg.k = k;
  ClusteringResult best;
  int best_view = -1;
  double best_acc = -1.0;
  for (std::size_t v = 0; v < ds.views.size(); ++v) {
    Labels labels = kmeans(ds.views[v], kmeans_cfg).labels;
    const double acc = clustering_accuracy(labels, *ds.labels);
    if (acc > best_acc) {
      best_acc = acc;
      best_view = static_cast<int>(v);
      best.labels = std::move(labels);
    }
  }
  return {std::move(best), best_view};
}

}  // namespace emvc
