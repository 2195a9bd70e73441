#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "emvc/metrics.hpp"
#include "emvc/rng.hpp"
#include "support/oracles.hpp"

using Catch::Approx;
using emvc::Labels;

namespace {

Labels random_labels(emvc::Rng& rng, int n, int k) {
  Labels v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(k));
  }
  return v;
}

// Same final arithmetic as the library, fed with brute-force pair counts.
double ari_from_pairs(const oracles::PairCounts& c) {
  const double expected = static_cast<double>(c.same_labels) *
                          static_cast<double>(c.same_truth) /
                          static_cast<double>(c.total);
  const double max_index =
      0.5 * static_cast<double>(c.same_labels + c.same_truth);
  if (max_index == expected) {
    return static_cast<double>(c.same_both) == expected ? 1.0 : 0.0;
  }
  return (static_cast<double>(c.same_both) - expected) / (max_index - expected);
}

}  // namespace

TEST_CASE("pairwise_prf perfect and degenerate cases") {
  const Labels truth = {0, 0, 1, 1};
  const emvc::PairwisePrf perfect = emvc::pairwise_prf(truth, truth);
  CHECK(perfect.f == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);

  const Labels singletons = {0, 1, 2, 3};
  const emvc::PairwisePrf none = emvc::pairwise_prf(singletons, truth);
  CHECK(none.precision == 0.0);
  CHECK(none.f == 0.0);
}

TEST_CASE("pairwise_prf matches exhaustive pair enumeration exactly") {
  emvc::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8;
    const Labels a = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    const Labels b = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    const oracles::PairCounts c = oracles::count_pairs(a, b);
    const emvc::PairwisePrf got = emvc::pairwise_prf(a, b);
    const double want_p = c.same_labels == 0 ? 0.0
                                             : static_cast<double>(c.same_both) /
                                                   static_cast<double>(c.same_labels);
    const double want_r = c.same_truth == 0 ? 0.0
                                            : static_cast<double>(c.same_both) /
                                                  static_cast<double>(c.same_truth);
    const double want_f =
        (want_p + want_r) == 0.0 ? 0.0 : 2.0 * want_p * want_r / (want_p + want_r);
    CHECK(got.precision == want_p);
    CHECK(got.recall == want_r);
    CHECK(got.f == want_f);
  }
}

TEST_CASE("nmi analytic cases") {
  CHECK(emvc::nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
  CHECK(emvc::nmi({1, 1, 0, 0}, {0, 0, 1, 1}) == 1.0);  // renamed
  CHECK(emvc::nmi({5, 5, 9, 9}, {0, 0, 1, 1}) == 1.0);  // hand-built diagonal 2x2
  CHECK(emvc::nmi({0, 0, 0, 0}, {0, 0, 1, 1}) == 0.0);  // zero entropy, different
}

TEST_CASE("nmi matches the direct information-theoretic computation") {
  emvc::Rng rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10;
    const Labels a = random_labels(rng, n, 3);
    const Labels b = random_labels(rng, n, 4);
    const oracles::InfoStats s = oracles::info_stats(a, b);
    if (s.h_labels == 0.0 || s.h_truth == 0.0) continue;
    const double want = s.mutual / std::sqrt(s.h_labels * s.h_truth);
    CHECK(emvc::nmi(a, b) == Approx(want).margin(1e-12));
    CHECK(emvc::nmi(a, b, emvc::NmiNorm::kMin) ==
          Approx(s.mutual / std::min(s.h_labels, s.h_truth)).margin(1e-12));
    CHECK(emvc::nmi(a, b, emvc::NmiNorm::kMax) ==
          Approx(s.mutual / std::max(s.h_labels, s.h_truth)).margin(1e-12));
    CHECK(emvc::nmi(a, b, emvc::NmiNorm::kArithmetic) ==
          Approx(s.mutual / (0.5 * (s.h_labels + s.h_truth))).margin(1e-12));
  }
}

TEST_CASE("nmi is symmetric and vanishes for independent labelings") {
  emvc::Rng rng(73);
  const Labels a = random_labels(rng, 1000, 3);
  const Labels b = random_labels(rng, 1000, 4);
  CHECK(emvc::nmi(a, b) == Approx(emvc::nmi(b, a)).margin(1e-12));
  CHECK(emvc::nmi(a, b) < 0.1);
}

TEST_CASE("clustering_accuracy analytic cases") {
  CHECK(emvc::clustering_accuracy({2, 2, 7, 7}, {0, 0, 1, 1}) == 1.0);
  CHECK(emvc::clustering_accuracy({0, 1, 0, 1}, {0, 0, 1, 1}) == 0.5);
}

TEST_CASE("clustering_accuracy matches exhaustive assignment search") {
  emvc::Rng rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6 + static_cast<int>(rng.uniform_int(3));
    const Labels a = random_labels(rng, n, 3);
    const Labels b = random_labels(rng, n, 3);
    CHECK(emvc::clustering_accuracy(a, b) ==
          Approx(oracles::accuracy_by_permutation(a, b)).margin(1e-15));
  }
}

TEST_CASE("conditional_entropy analytic cases") {
  CHECK(emvc::conditional_entropy({0, 0, 1, 1}, {0, 0, 1, 1}) == 0.0);
  // one predicted cluster holding two equal classes -> exactly 1 bit
  CHECK(emvc::conditional_entropy({0, 0, 0, 0}, {0, 0, 1, 1}) == Approx(1.0));
}

TEST_CASE("conditional_entropy matches direct computation") {
  emvc::Rng rng(75);
  for (int trial = 0; trial < 50; ++trial) {
    const Labels a = random_labels(rng, 9, 3);
    const Labels b = random_labels(rng, 9, 3);
    const auto table = oracles::contingency(a, b);
    double want = 0.0;
    for (const auto& row : table) {
      std::int64_t nc = 0;
      for (std::int64_t x : row) nc += x;
      if (nc == 0) continue;
      double inner = 0.0;
      for (std::int64_t x : row) {
        if (x == 0) continue;
        const double q = static_cast<double>(x) / static_cast<double>(nc);
        inner -= q * std::log2(q);
      }
      want += (static_cast<double>(nc) / 9.0) * inner;
    }
    CHECK(emvc::conditional_entropy(a, b) == Approx(want).margin(1e-12));
  }
}

TEST_CASE("adjusted_rand analytic cases") {
  CHECK(emvc::adjusted_rand({3, 3, 8, 8}, {0, 0, 1, 1}) == 1.0);
  // truth split evenly, labels constant: index equals its expectation
  CHECK(emvc::adjusted_rand({0, 0, 0, 0}, {0, 0, 1, 1}) == 0.0);
}

TEST_CASE("adjusted_rand matches the brute-force pair oracle exactly") {
  emvc::Rng rng(76);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8;
    const Labels a = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    const Labels b = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    CHECK(emvc::adjusted_rand(a, b) == ari_from_pairs(oracles::count_pairs(a, b)));
  }
}

TEST_CASE("metrics are invariant under label renaming") {
  emvc::Rng rng(77);
  const Labels a = random_labels(rng, 12, 3);
  const Labels b = random_labels(rng, 12, 3);
  Labels renamed(a);
  for (int& x : renamed) x = 100 - 7 * x;  // injective renaming
  CHECK(emvc::clustering_accuracy(renamed, b) == emvc::clustering_accuracy(a, b));
  CHECK(emvc::nmi(renamed, b) == emvc::nmi(a, b));
  CHECK(emvc::adjusted_rand(renamed, b) == emvc::adjusted_rand(a, b));
  CHECK(emvc::conditional_entropy(renamed, b) == emvc::conditional_entropy(a, b));
  CHECK(emvc::pairwise_prf(renamed, b).f == emvc::pairwise_prf(a, b).f);
}

TEST_CASE("metric report bundles every metric with stable field order") {
  const Labels truth = {0, 0, 1, 1, 2, 2};
  const Labels labels = {0, 0, 1, 2, 2, 2};
  const emvc::MetricsReport r = emvc::evaluate(labels, truth);
  CHECK(r.accuracy == emvc::clustering_accuracy(labels, truth));
  CHECK(r.nmi == emvc::nmi(labels, truth));
  CHECK(r.adjusted_rand == emvc::adjusted_rand(labels, truth));
  CHECK(emvc::metric_fields().size() == 7);
  CHECK(std::string(emvc::metric_fields()[0].first) == "f_score");
  CHECK(r.*(emvc::metric_fields()[5].second) == r.accuracy);
}

TEST_CASE("metrics validate input shapes") {
  CHECK_THROWS_AS(emvc::nmi({0, 1}, {0, 1, 2}), emvc::ShapeError);
  CHECK_THROWS_AS(emvc::clustering_accuracy({0}, {0}), emvc::ShapeError);
}
