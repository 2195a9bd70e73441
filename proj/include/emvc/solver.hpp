#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "emvc/errors.hpp"
#include "emvc/graph.hpp"
#include "emvc/markov_spectral.hpp"
#include "emvc/metrics.hpp"
#include "emvc/prox.hpp"
#include "emvc/rng.hpp"

namespace emvc {

struct EmvcConfig {
  double lambda = 1.0;      // group-l1 weight
  double beta = 1.0;        // l2,1 weight
  double mu0 = 1e-6;        // initial penalty
  double rho = 1.9;         // penalty growth factor
  double mu_max = 1e10;     // penalty cap
  double eps = 1e-8;        // feasibility tolerance
  int max_iters = 300;
  double reweight_eps = 1e-10;  // floor for IRLS denominators
  std::uint64_t seed = 0;

  void validate() const {
    if (lambda < 0 || beta < 0) {
      throw ConfigError("EmvcConfig: lambda and beta must be >= 0");
    }
    if (mu0 <= 0 || rho <= 1 || mu_max < mu0 || eps <= 0 || max_iters < 1 ||
        reweight_eps <= 0) {
      throw ConfigError("EmvcConfig: invalid solver parameters");
    }
  }
};

// Stacked per-view error matrices E = [E^(1); ...; E^(K)], (K*N) x N.
// Column i of view block j holds the error pattern of sample i in view j.
struct SolverState {
  TransitionMatrix p_hat;          // shared transition matrix, N x N
  Eigen::MatrixXd e;               // error stack, (K*N) x N
  Eigen::MatrixXd q;               // low-rank auxiliary variable
  Eigen::MatrixXd z;               // multiplier for P_hat = Q
  std::vector<Eigen::MatrixXd> y;  // multipliers for P_hat + E^(i) = P^(i)
  double mu = 0.0;
  int iter = 0;
  std::vector<double> objective_history;
  bool converged = false;
  double view_residual = std::numeric_limits<double>::infinity();
  double consensus_residual = std::numeric_limits<double>::infinity();

  int num_views() const { return static_cast<int>(y.size()); }
  Eigen::Index n() const { return p_hat.p.rows(); }

  // View block j of the error stack.
  Eigen::Block<Eigen::MatrixXd> e_view(int j) {
    return e.middleRows(static_cast<Eigen::Index>(j) * n(), n());
  }
  Eigen::Block<const Eigen::MatrixXd> e_view(int j) const {
    return e.middleRows(static_cast<Eigen::Index>(j) * n(), n());
  }
};

// Objective tracked across iterations: nuclear norm of the shared matrix plus
// the weighted structured-sparsity norms of the error stack.
inline double objective(const Eigen::MatrixXd& p_hat, const Eigen::MatrixXd& e,
                        double lambda, double beta) {
  const int n = static_cast<int>(p_hat.rows());
  const int k = static_cast<int>(e.rows() / n);
  return nuclear_norm(p_hat) + beta * l21_norm(e) + lambda * group_l1_norm(e, k, n);
}

// Minimizer of the low-rank subproblem: shrink the singular values of
// P_hat + Z/mu by 1/mu.
inline Eigen::MatrixXd update_q(const Eigen::MatrixXd& p_hat, const Eigen::MatrixXd& z,
                                double mu) {
  if (mu <= 0.0) {
    throw ConfigError("update_q: mu must be positive");
  }
  return svt(p_hat + z / mu, 1.0 / mu);
}

// One reweighted least-squares step for the error stack. The quadratic system
// per column is diagonal, so every entry has the closed form
//   e_l[r] = b_l[r] / (1 + (beta/mu) * dhat_r + (lambda/mu) * d_r^l)
// where the weights come from the PREVIOUS iterate: dhat_r = 1/(2*norm of row r)
// and d_r^l = 1/(2*norm of the view segment of column l containing r).
inline Eigen::MatrixXd update_e(const SolverState& state,
                                const std::vector<TransitionMatrix>& views,
                                const EmvcConfig& cfg) {
  const Eigen::Index n = state.n();
  const int k = state.num_views();
  const double bm = cfg.beta / state.mu;
  const double lm = cfg.lambda / state.mu;

  Eigen::VectorXd dhat =
      (2.0 * state.e.rowwise().norm().cwiseMax(cfg.reweight_eps)).cwiseInverse();

  Eigen::MatrixXd result(state.e.rows(), n);
  for (int j = 0; j < k; ++j) {
    const auto e_prev = state.e_view(j);
    const Eigen::VectorXd seg_inv =
        (2.0 * e_prev.colwise().norm().transpose().cwiseMax(cfg.reweight_eps))
            .cwiseInverse();
    const Eigen::MatrixXd b =
        views[static_cast<std::size_t>(j)].p - state.p_hat.p -
        state.y[static_cast<std::size_t>(j)] / state.mu;
    const Eigen::ArrayXd row_term =
        1.0 + bm * dhat.segment(static_cast<Eigen::Index>(j) * n, n).array();
    result.middleRows(static_cast<Eigen::Index>(j) * n, n) =
        b.array() /
        (row_term.replicate(1, n) + (lm * seg_inv.transpose().array()).replicate(n, 1));
  }
  return result;
}

// Averages the consensus targets and projects each row onto the simplex.
inline TransitionMatrix update_p_hat(const SolverState& state,
                                     const std::vector<TransitionMatrix>& views,
                                     const EmvcConfig& cfg) {
  (void)cfg;
  const Eigen::Index n = state.n();
  const int k = state.num_views();
  Eigen::MatrixXd c = state.q - state.z / state.mu;
  for (int j = 0; j < k; ++j) {
    c += views[static_cast<std::size_t>(j)].p - state.e_view(j) -
         state.y[static_cast<std::size_t>(j)] / state.mu;
  }
  c /= static_cast<double>(k + 1);

  TransitionMatrix p_hat{Eigen::MatrixXd(n, n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    p_hat.p.row(r) = project_simplex(c.row(r).transpose()).transpose();
  }
  return p_hat;
}

// Ascends the multipliers along the constraint residuals, records the
// residual magnitudes, and grows the penalty geometrically up to its cap.
inline void update_multipliers(SolverState& state,
                               const std::vector<TransitionMatrix>& views,
                               const EmvcConfig& cfg) {
  const int k = state.num_views();
  double view_residual = 0.0;
  for (int j = 0; j < k; ++j) {
    const Eigen::MatrixXd r =
        state.p_hat.p + state.e_view(j) - views[static_cast<std::size_t>(j)].p;
    view_residual = std::max(view_residual, r.cwiseAbs().maxCoeff());
    state.y[static_cast<std::size_t>(j)] += state.mu * r;
  }
  const Eigen::MatrixXd rq = state.p_hat.p - state.q;
  state.z += state.mu * rq;
  state.view_residual = view_residual;
  state.consensus_residual = rq.cwiseAbs().maxCoeff();
  state.mu = std::min(cfg.rho * state.mu, cfg.mu_max);
}

// Alternating-direction solve for the shared transition matrix and the
// per-view error stack.
inline SolverState solve(const std::vector<TransitionMatrix>& views,
                         const EmvcConfig& cfg) {
  cfg.validate();
  if (views.empty()) {
    throw ConfigError("solve: need at least one view");
  }
  const Eigen::Index n = views.front().p.rows();
  for (const auto& v : views) {
    if (v.p.rows() != n || v.p.cols() != n) {
      throw ShapeError("solve: views must share the same N x N shape");
    }
  }
  const int k = static_cast<int>(views.size());

  SolverState state;
  state.p_hat.p = Eigen::MatrixXd::Zero(n, n);
  state.q = Eigen::MatrixXd::Zero(n, n);
  state.z = Eigen::MatrixXd::Zero(n, n);
  state.y.assign(static_cast<std::size_t>(k), Eigen::MatrixXd::Zero(n, n));
  state.mu = cfg.mu0;

  Rng rng(cfg.seed);
  state.e.resize(static_cast<Eigen::Index>(k) * n, n);
  for (Eigen::Index r = 0; r < state.e.rows(); ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      state.e(r, c) = rng.uniform();
    }
  }

  for (int it = 1; it <= cfg.max_iters; ++it) {
    state.iter = it;
    state.p_hat = update_p_hat(state, views, cfg);
    state.e = update_e(state, views, cfg);
    state.q = update_q(state.p_hat.p, state.z, state.mu);
    update_multipliers(state, views, cfg);
    state.objective_history.push_back(
        objective(state.p_hat.p, state.e, cfg.lambda, cfg.beta));
    if (std::max(state.view_residual, state.consensus_residual) <= cfg.eps) {
      state.converged = true;
      break;
    }
  }
  return state;
}

// Decompose the views, then cluster the shared transition matrix with the
// random-walk spectral step.
inline ClusteringResult cluster(const std::vector<TransitionMatrix>& views,
                                const EmvcConfig& cfg,
                                const KMeansConfig& kmeans_cfg, int r,
                                SolverState* state_out = nullptr) {
  SolverState state = solve(views, cfg);
  ClusteringResult out;
  out.labels = cluster_markov(state.p_hat, r, kmeans_cfg);
  if (state_out != nullptr) {
    *state_out = std::move(state);
  }
  return out;
}

}  // namespace emvc
