#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "emvc/errors.hpp"

namespace emvc {

// Row-stochastic transition matrix. Rows are probability distributions.
struct TransitionMatrix {
  Eigen::MatrixXd p;

  Eigen::Index size() const { return p.rows(); }

  // Checks squareness, nonnegativity and unit row sums.
  void validate(double tol = 1e-9) const {
    if (p.rows() != p.cols()) {
      throw ShapeError("TransitionMatrix: matrix must be square");
    }
    if (!p.allFinite()) {
      throw NumericalError("TransitionMatrix: non-finite entries");
    }
    if ((p.array() < 0.0).any()) {
      throw NumericalError("TransitionMatrix: negative entries");
    }
    const Eigen::VectorXd sums = p.rowwise().sum();
    if (((sums.array() - 1.0).abs() > tol).any()) {
      throw NumericalError("TransitionMatrix: row sums deviate from 1");
    }
  }
};

enum class SigmaMode {
  kMedianSquared,  // bandwidth = median pairwise distance, squared
  kMedianRaw,      // bandwidth = median pairwise distance as-is
};

namespace detail {

// Squared Euclidean distance matrix between rows of x.
inline Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = sq.replicate(1, x.rows()) +
                       sq.transpose().replicate(x.rows(), 1) -
                       2.0 * x * x.transpose();
  return d2.cwiseMax(0.0);
}

}  // namespace detail

// Median of the N(N-1)/2 pairwise Euclidean distances; for even counts the
// mean of the two middle order statistics.
inline double median_sigma(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) {
    throw ConfigError("median_sigma: need at least two points");
  }
  if (!x.allFinite()) {
    throw NumericalError("median_sigma: non-finite input");
  }
  const Eigen::MatrixXd d2 = detail::squared_distances(x);
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(x.rows()) * (x.rows() - 1) / 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      dists.push_back(std::sqrt(d2(i, j)));
    }
  }
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  double med = dists[mid];
  if (dists.size() % 2 == 0) {
    const double lo = *std::max_element(dists.begin(), dists.begin() + mid);
    med = 0.5 * (lo + med);
  }
  if (med <= 0.0) {
    throw DegenerateScaleError("median_sigma: median pairwise distance is zero");
  }
  return med;
}

// Gaussian kernel bandwidth (the sigma2 in exp(-d^2 / sigma2)) derived from
// the median pairwise distance, either squared or taken literally.
inline double kernel_bandwidth(const Eigen::MatrixXd& x, SigmaMode mode) {
  const double med = median_sigma(x);
  return mode == SigmaMode::kMedianSquared ? med * med : med;
}

// Gaussian similarities s_ij = exp(-||x_i - x_j||^2 / sigma2).
inline Eigen::MatrixXd similarity_matrix(const Eigen::MatrixXd& x, double sigma2) {
  if (sigma2 <= 0.0) {
    throw ConfigError("similarity_matrix: sigma2 must be positive");
  }
  if (!x.allFinite()) {
    throw NumericalError("similarity_matrix: non-finite input");
  }
  return (-detail::squared_distances(x) / sigma2).array().exp();
}

// Row-normalizes a nonnegative similarity matrix into transition probabilities.
inline TransitionMatrix transition_from_similarity(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) {
    throw ShapeError("transition_from_similarity: matrix must be square");
  }
  const Eigen::VectorXd sums = s.rowwise().sum();
  if ((sums.array() <= 0.0).any()) {
    throw NumericalError("transition_from_similarity: zero row sum");
  }
  TransitionMatrix t{sums.cwiseInverse().asDiagonal() * s};
  t.validate();
  return t;
}

// Similarities followed by row normalization for one view.
inline TransitionMatrix transition_matrix(const Eigen::MatrixXd& x, double sigma2) {
  return transition_from_similarity(similarity_matrix(x, sigma2));
}

// Full pipeline for one view with the bandwidth chosen from the data.
inline TransitionMatrix transition_matrix(const Eigen::MatrixXd& x, SigmaMode mode) {
  return transition_matrix(x, kernel_bandwidth(x, mode));
}

}  // namespace emvc
