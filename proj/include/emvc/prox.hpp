#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "emvc/errors.hpp"

namespace emvc {

namespace detail {

inline void require_finite(const Eigen::MatrixXd& m, const char* where) {
  if (!m.allFinite()) {
    throw NumericalError(std::string(where) + ": non-finite input");
  }
}

}  // namespace detail

// Elementwise soft threshold: max(x - sigma, 0) + min(x + sigma, 0).
inline double shrink(double x, double sigma) {
  return std::max(x - sigma, 0.0) + std::min(x + sigma, 0.0);
}

inline Eigen::MatrixXd shrink(const Eigen::MatrixXd& m, double sigma) {
  return (m.array() - sigma).cwiseMax(0.0) + (m.array() + sigma).cwiseMin(0.0);
}

// Sum of singular values.
inline double nuclear_norm(const Eigen::MatrixXd& m) {
  detail::require_finite(m, "nuclear_norm");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().sum();
}

// Proximal operator of the nuclear norm: SVD, shrink the singular values by
// tau, reconstruct. When an upper bound on the largest singular value already
// sits at or below tau the result is exactly zero and the SVD is skipped.
inline Eigen::MatrixXd svt(const Eigen::MatrixXd& m, double tau) {
  if (tau <= 0.0) {
    throw ConfigError("svt: threshold must be positive");
  }
  detail::require_finite(m, "svt");
  const double max_col = m.cwiseAbs().colwise().sum().maxCoeff();
  const double max_row = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (std::sqrt(max_col * max_row) <= tau) {
    return Eigen::MatrixXd::Zero(m.rows(), m.cols());
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = (svd.singularValues().array() - tau).cwiseMax(0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 0.0) ++rank;
  if (rank == 0) {
    return Eigen::MatrixXd::Zero(m.rows(), m.cols());
  }
  return svd.matrixU().leftCols(rank) * s.head(rank).asDiagonal() *
         svd.matrixV().leftCols(rank).transpose();
}

// Euclidean projection onto the probability simplex
// {p : p >= 0, sum(p) = 1} by sorting and thresholding.
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& c) {
  if (c.size() == 0) {
    throw ShapeError("project_simplex: empty vector");
  }
  if (!c.allFinite()) {
    throw NumericalError("project_simplex: non-finite input");
  }
  std::vector<double> u(c.data(), c.data() + c.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double sigma = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      sigma = candidate;
    } else {
      break;
    }
  }
  return (c.array() - sigma).cwiseMax(0.0);
}

// Sum of row 2-norms.
inline double l21_norm(const Eigen::MatrixXd& e) {
  detail::require_finite(e, "l21_norm");
  return e.rowwise().norm().sum();
}

// Sum of 2-norms over per-view column segments: the stack holds num_views
// blocks of n rows each, and every column of every block is one group.
inline double group_l1_norm(const Eigen::MatrixXd& e, int num_views, int n) {
  if (num_views < 1 || n < 1 || e.rows() != static_cast<Eigen::Index>(num_views) * n ||
      e.cols() != n) {
    throw ShapeError("group_l1_norm: stack must be (num_views*n) x n");
  }
  detail::require_finite(e, "group_l1_norm");
  double total = 0.0;
  for (int v = 0; v < num_views; ++v) {
    total += e.middleRows(static_cast<Eigen::Index>(v) * n, n).colwise().norm().sum();
  }
  return total;
}

}  // namespace emvc
