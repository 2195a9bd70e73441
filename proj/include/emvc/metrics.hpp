#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "emvc/errors.hpp"

namespace emvc {

using Labels = std::vector<int>;

struct MetricsReport {
  double f_score = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double nmi = 0.0;
  double entropy = 0.0;  // H(truth | labels), bits; smaller is better
  double accuracy = 0.0;
  double adjusted_rand = 0.0;
};

struct ClusteringResult {
  Labels labels;
  MetricsReport report{};  // filled in once ground truth is available
};

// Stable field order used by every serializer.
inline const std::array<std::pair<const char*, double MetricsReport::*>, 7>&
metric_fields() {
  static const std::array<std::pair<const char*, double MetricsReport::*>, 7> fields = {{
      {"f_score", &MetricsReport::f_score},
      {"precision", &MetricsReport::precision},
      {"recall", &MetricsReport::recall},
      {"nmi", &MetricsReport::nmi},
      {"entropy", &MetricsReport::entropy},
      {"accuracy", &MetricsReport::accuracy},
      {"adjusted_rand", &MetricsReport::adjusted_rand},
  }};
  return fields;
}

namespace detail {

inline void require_same_length(const Labels& labels, const Labels& truth) {
  if (labels.size() != truth.size()) {
    throw ShapeError("metrics: label vectors differ in length");
  }
  if (labels.size() < 2) {
    throw ShapeError("metrics: need at least two samples");
  }
}

// Densely remapped contingency table: entry (i, j) counts samples with
// predicted cluster i and true class j.
struct Contingency {
  std::vector<std::int64_t> counts;  // row-major ka x kb
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  int ka = 0;
  int kb = 0;

  std::int64_t at(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * static_cast<std::size_t>(kb) +
                  static_cast<std::size_t>(j)];
  }
};

inline std::vector<int> dense_ids(const Labels& v) {
  std::vector<int> ids(v);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> out;
  out.reserve(v.size());
  for (int x : v) {
    out.push_back(
        static_cast<int>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin()));
  }
  return out;
}

inline Contingency contingency(const Labels& labels, const Labels& truth) {
  const std::vector<int> a = dense_ids(labels);
  const std::vector<int> b = dense_ids(truth);
  Contingency c;
  c.ka = *std::max_element(a.begin(), a.end()) + 1;
  c.kb = *std::max_element(b.begin(), b.end()) + 1;
  c.counts.assign(static_cast<std::size_t>(c.ka) * static_cast<std::size_t>(c.kb), 0);
  c.row_sums.assign(static_cast<std::size_t>(c.ka), 0);
  c.col_sums.assign(static_cast<std::size_t>(c.kb), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    c.counts[static_cast<std::size_t>(a[i]) * static_cast<std::size_t>(c.kb) +
             static_cast<std::size_t>(b[i])] += 1;
    c.row_sums[static_cast<std::size_t>(a[i])] += 1;
    c.col_sums[static_cast<std::size_t>(b[i])] += 1;
  }
  return c;
}

inline std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// Minimum-cost assignment on a square matrix via shortest augmenting paths
// with potentials; O(n^3).
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = p[static_cast<std::size_t>(j0)];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)]
                               [static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  // column j (0-based) -> row assigned (0-based)
  std::vector<int> match(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    match[static_cast<std::size_t>(j - 1)] = p[static_cast<std::size_t>(j)] - 1;
  }
  return match;
}

}  // namespace detail

// Pair-counting precision, recall and F-score. Over all unordered sample
// pairs: TP = co-clustered in both, FP = co-clustered in labels only,
// FN = co-clustered in truth only. All 0/0 cases resolve to 0.
struct PairwisePrf {
  double f = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

inline PairwisePrf pairwise_prf(const Labels& labels, const Labels& truth) {
  detail::require_same_length(labels, truth);
  const detail::Contingency c = detail::contingency(labels, truth);
  std::int64_t tp = 0;
  for (std::int64_t n_ij : c.counts) tp += detail::choose2(n_ij);
  std::int64_t same_labels = 0;
  for (std::int64_t a : c.row_sums) same_labels += detail::choose2(a);
  std::int64_t same_truth = 0;
  for (std::int64_t b : c.col_sums) same_truth += detail::choose2(b);

  PairwisePrf out;
  out.precision = same_labels == 0
                      ? 0.0
                      : static_cast<double>(tp) / static_cast<double>(same_labels);
  out.recall = same_truth == 0
                   ? 0.0
                   : static_cast<double>(tp) / static_cast<double>(same_truth);
  out.f = (out.precision + out.recall) == 0.0
              ? 0.0
              : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

enum class NmiNorm { kSqrt, kMin, kMax, kArithmetic };

// Normalized mutual information with natural-log entropies. Identical
// partitions (up to renaming) give exactly 1; a zero entropy on either side
// with differing partitions gives 0.
inline double nmi(const Labels& labels, const Labels& truth,
                  NmiNorm norm = NmiNorm::kSqrt) {
  detail::require_same_length(labels, truth);
  const detail::Contingency c = detail::contingency(labels, truth);
  const double n = static_cast<double>(labels.size());

  bool identical = c.ka == c.kb;
  if (identical) {
    for (int i = 0; i < c.ka && identical; ++i) {
      int nonzero = 0;
      for (int j = 0; j < c.kb; ++j) {
        nonzero += c.at(i, j) > 0;
      }
      identical = nonzero == 1;
    }
  }
  if (identical) return 1.0;

  double h_labels = 0.0, h_truth = 0.0, mutual = 0.0;
  for (std::int64_t a : c.row_sums) {
    if (a > 0) {
      const double pa = static_cast<double>(a) / n;
      h_labels -= pa * std::log(pa);
    }
  }
  for (std::int64_t b : c.col_sums) {
    if (b > 0) {
      const double pb = static_cast<double>(b) / n;
      h_truth -= pb * std::log(pb);
    }
  }
  if (h_labels == 0.0 || h_truth == 0.0) return 0.0;
  for (int i = 0; i < c.ka; ++i) {
    for (int j = 0; j < c.kb; ++j) {
      const std::int64_t n_ij = c.at(i, j);
      if (n_ij == 0) continue;
      const double pij = static_cast<double>(n_ij) / n;
      const double pa = static_cast<double>(c.row_sums[static_cast<std::size_t>(i)]) / n;
      const double pb = static_cast<double>(c.col_sums[static_cast<std::size_t>(j)]) / n;
      mutual += pij * std::log(pij / (pa * pb));
    }
  }
  double denom = 0.0;
  switch (norm) {
    case NmiNorm::kSqrt: denom = std::sqrt(h_labels * h_truth); break;
    case NmiNorm::kMin: denom = std::min(h_labels, h_truth); break;
    case NmiNorm::kMax: denom = std::max(h_labels, h_truth); break;
    case NmiNorm::kArithmetic: denom = 0.5 * (h_labels + h_truth); break;
  }
  return std::clamp(mutual / denom, 0.0, 1.0);
}

// Fraction of samples matched under the best cluster-to-class assignment
// (Hungarian algorithm on the contingency matrix).
inline double clustering_accuracy(const Labels& labels, const Labels& truth) {
  detail::require_same_length(labels, truth);
  const detail::Contingency c = detail::contingency(labels, truth);
  const int s = std::max(c.ka, c.kb);
  std::vector<std::vector<double>> cost(
      static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(s), 0.0));
  for (int i = 0; i < c.ka; ++i) {
    for (int j = 0; j < c.kb; ++j) {
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          -static_cast<double>(c.at(i, j));
    }
  }
  const std::vector<int> match = detail::hungarian(cost);
  std::int64_t matched = 0;
  for (int j = 0; j < s; ++j) {
    const int i = match[static_cast<std::size_t>(j)];
    if (i < c.ka && j < c.kb) matched += c.at(i, j);
  }
  return static_cast<double>(matched) / static_cast<double>(labels.size());
}

// H(truth | labels) in bits.
inline double conditional_entropy(const Labels& labels, const Labels& truth) {
  detail::require_same_length(labels, truth);
  const detail::Contingency c = detail::contingency(labels, truth);
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (int i = 0; i < c.ka; ++i) {
    const double nc = static_cast<double>(c.row_sums[static_cast<std::size_t>(i)]);
    if (nc == 0) continue;
    double inner = 0.0;
    for (int j = 0; j < c.kb; ++j) {
      const std::int64_t n_ij = c.at(i, j);
      if (n_ij == 0) continue;
      const double q = static_cast<double>(n_ij) / nc;
      inner -= q * std::log2(q);
    }
    h += (nc / n) * inner;
  }
  return h;
}

// Hubert-Arabie adjusted Rand index from pair-count contingency sums.
inline double adjusted_rand(const Labels& labels, const Labels& truth) {
  detail::require_same_length(labels, truth);
  const detail::Contingency c = detail::contingency(labels, truth);
  std::int64_t index = 0;
  for (std::int64_t n_ij : c.counts) index += detail::choose2(n_ij);
  std::int64_t sum_a = 0;
  for (std::int64_t a : c.row_sums) sum_a += detail::choose2(a);
  std::int64_t sum_b = 0;
  for (std::int64_t b : c.col_sums) sum_b += detail::choose2(b);
  const std::int64_t total = detail::choose2(static_cast<std::int64_t>(labels.size()));

  const double expected = static_cast<double>(sum_a) * static_cast<double>(sum_b) /
                          static_cast<double>(total);
  const double max_index = 0.5 * static_cast<double>(sum_a + sum_b);
  if (max_index == expected) {
    return static_cast<double>(index) == expected ? 1.0 : 0.0;
  }
  return (static_cast<double>(index) - expected) / (max_index - expected);
}

inline MetricsReport evaluate(const Labels& labels, const Labels& truth,
                              NmiNorm norm = NmiNorm::kSqrt) {
  MetricsReport r;
  const PairwisePrf prf = pairwise_prf(labels, truth);
  r.f_score = prf.f;
  r.precision = prf.precision;
  r.recall = prf.recall;
  r.nmi = nmi(labels, truth, norm);
  r.entropy = conditional_entropy(labels, truth);
  r.accuracy = clustering_accuracy(labels, truth);
  r.adjusted_rand = adjusted_rand(labels, truth);
  return r;
}

}  // namespace emvc
