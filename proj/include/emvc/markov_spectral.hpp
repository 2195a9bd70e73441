#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "emvc/errors.hpp"
#include "emvc/graph.hpp"
#include "emvc/kmeans.hpp"

namespace emvc {

struct StationaryOptions {
  double tol = 1e-10;
  int max_iters = 10000;
  double teleport = 0.0;  // mixes P with the uniform chain; 0 disables

  void validate() const {
    if (tol <= 0 || max_iters < 1 || teleport < 0 || teleport >= 1) {
      throw ConfigError("StationaryOptions: invalid parameters");
    }
  }
};

struct StationaryDistribution {
  Eigen::VectorXd pi;
};

struct SpectralEmbedding {
  Eigen::MatrixXd u;            // N x R generalized eigenvector coordinates
  Eigen::VectorXd eigenvalues;  // the R smallest, ascending
};

// Left fixed point pi^T = pi^T P by power iteration from the uniform vector,
// renormalized each step. With teleport > 0 the chain is mixed with the
// uniform chain, which makes reducible or periodic inputs ergodic.
inline StationaryDistribution stationary_distribution(
    const TransitionMatrix& p, const StationaryOptions& opts = {}) {
  opts.validate();
  const Eigen::Index n = p.size();
  const double alpha = opts.teleport;
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iters; ++it) {
    Eigen::VectorXd next = p.p.transpose() * pi;
    if (alpha > 0.0) {
      next = (1.0 - alpha) * next +
             Eigen::VectorXd::Constant(n, alpha / static_cast<double>(n));
    }
    next /= next.sum();
    residual = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (residual <= opts.tol) {
      return StationaryDistribution{std::move(pi)};
    }
  }
  throw ConvergenceError("stationary_distribution: power iteration did not converge",
                         residual);
}

// Symmetric Laplacian-like matrix D - (D P + P^T D)/2 with D = diag(pi).
inline Eigen::MatrixXd markov_laplacian(const TransitionMatrix& p,
                                        const StationaryDistribution& dist) {
  if (dist.pi.size() != p.size()) {
    throw ShapeError("markov_laplacian: pi length must match P");
  }
  const Eigen::MatrixXd dp = dist.pi.asDiagonal() * p.p;
  Eigen::MatrixXd l = -0.5 * (dp + dp.transpose());
  l.diagonal() += dist.pi;
  return l;
}

// Solves L u = lambda D u for the R smallest eigenvalues by whitening with
// D^{-1/2} (D positive diagonal) and back-transforming the eigenvectors.
// Column signs are fixed so the largest-magnitude entry is positive.
inline SpectralEmbedding spectral_embed(const Eigen::MatrixXd& l,
                                        const Eigen::VectorXd& dhat, int r) {
  const Eigen::Index n = l.rows();
  if (l.cols() != n || dhat.size() != n) {
    throw ShapeError("spectral_embed: dimension mismatch");
  }
  if (r < 1 || r > n) {
    throw ConfigError("spectral_embed: R must be in [1, N]");
  }
  if ((dhat.array() <= 0.0).any()) {
    throw DegenerateDistributionError(
        "spectral_embed: weight matrix has non-positive diagonal entries");
  }
  const Eigen::VectorXd inv_sqrt = dhat.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd w = inv_sqrt.asDiagonal() * l * inv_sqrt.asDiagonal();
  w = 0.5 * (w + w.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("spectral_embed: eigendecomposition failed");
  }
  SpectralEmbedding out;
  out.eigenvalues = eig.eigenvalues().head(r);
  out.u = inv_sqrt.asDiagonal() * eig.eigenvectors().leftCols(r);
  for (Eigen::Index c = 0; c < out.u.cols(); ++c) {
    Eigen::Index idx = 0;
    out.u.col(c).cwiseAbs().maxCoeff(&idx);
    if (out.u(idx, c) < 0.0) {
      out.u.col(c) = -out.u.col(c);
    }
  }
  return out;
}

struct MarkovClusterOptions {
  StationaryOptions stationary;
  bool normalize_rows = false;  // unit-normalize embedding rows before k-means
};

// Full pipeline: stationary distribution, Laplacian, R smallest generalized
// eigenvectors, k-means on the embedding rows.
inline std::vector<int> cluster_markov(const TransitionMatrix& p, int r,
                                       const KMeansConfig& kmeans_cfg,
                                       const MarkovClusterOptions& opts = {}) {
  if (r < 2) {
    throw ConfigError("cluster_markov: need at least two clusters");
  }
  const StationaryDistribution dist = stationary_distribution(p, opts.stationary);
  const Eigen::MatrixXd l = markov_laplacian(p, dist);
  SpectralEmbedding embedding = spectral_embed(l, dist.pi, r);
  if (opts.normalize_rows) {
    for (Eigen::Index i = 0; i < embedding.u.rows(); ++i) {
      const double norm = embedding.u.row(i).norm();
      if (norm > 0.0) {
        embedding.u.row(i) /= norm;
      }
    }
  }
  KMeansConfig cfg = kmeans_cfg;
  cfg.k = r;
  return kmeans(embedding.u, cfg).labels;
}

}  // namespace emvc
