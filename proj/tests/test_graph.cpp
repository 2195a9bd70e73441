#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "emvc/graph.hpp"
#include "emvc/rng.hpp"
#include "support/oracles.hpp"

using Catch::Approx;

TEST_CASE("median_sigma on three collinear points") {
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 1.0, 3.0;
  // pairwise distances {1, 2, 3}
  CHECK(emvc::median_sigma(x) == Approx(2.0));
}

TEST_CASE("median_sigma averages the middle pair for even counts") {
  Eigen::MatrixXd x(4, 1);
  x << 0.0, 1.0, 2.0, 10.0;
  // distances {1, 2, 10, 1, 9, 8} -> sorted {1, 1, 2, 8, 9, 10} -> median 5
  CHECK(emvc::median_sigma(x) == Approx(5.0));
}

TEST_CASE("median_sigma rejects degenerate inputs") {
  CHECK_THROWS_AS(emvc::median_sigma(Eigen::MatrixXd::Zero(1, 2)), emvc::ConfigError);
  CHECK_THROWS_AS(emvc::median_sigma(Eigen::MatrixXd::Ones(5, 2)),
                  emvc::DegenerateScaleError);
}

TEST_CASE("similarity_matrix matches the Gaussian kernel") {
  Eigen::MatrixXd x(2, 2);
  x << 0.0, 0.0, 1.0, 1.0;  // squared distance 2
  const Eigen::MatrixXd s = emvc::similarity_matrix(x, 2.0);
  CHECK(s(0, 0) == Approx(1.0));
  CHECK(s(1, 1) == Approx(1.0));
  CHECK(s(0, 1) == Approx(std::exp(-1.0)));
  CHECK(s(1, 0) == Approx(std::exp(-1.0)));
}

TEST_CASE("similarity_matrix is symmetric with unit diagonal") {
  emvc::Rng rng(21);
  const Eigen::MatrixXd x = oracles::random_matrix(rng, 12, 3, -2.0, 2.0);
  const Eigen::MatrixXd s = emvc::similarity_matrix(x, 1.7);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s.diagonal().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK((s.array() > 0.0).all());
  CHECK((s.array() <= 1.0 + 1e-15).all());
}

TEST_CASE("transition_matrix matches hand-computed row normalization") {
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 1.0, 10.0;
  const emvc::TransitionMatrix t = emvc::transition_matrix(x, 1.0);

  Eigen::MatrixXd s(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      s(i, j) = std::exp(-(x(i, 0) - x(j, 0)) * (x(i, 0) - x(j, 0)));
    }
  }
  for (int i = 0; i < 3; ++i) {
    const double row_sum = s.row(i).sum();
    for (int j = 0; j < 3; ++j) {
      CHECK(t.p(i, j) == Approx(s(i, j) / row_sum).margin(1e-12));
    }
  }
}

TEST_CASE("transition matrices are row-stochastic") {
  emvc::Rng rng(22);
  const Eigen::MatrixXd x = oracles::random_matrix(rng, 20, 4, -1.0, 1.0);
  const emvc::TransitionMatrix t =
      emvc::transition_matrix(x, emvc::SigmaMode::kMedianSquared);
  t.validate();
  CHECK((t.p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("feature scaling with matching bandwidth scaling leaves P unchanged") {
  emvc::Rng rng(23);
  const Eigen::MatrixXd x = oracles::random_matrix(rng, 15, 3, -1.0, 1.0);
  const double sigma2 = 0.8;
  const double c = 3.7;
  const emvc::TransitionMatrix a = emvc::transition_matrix(x, sigma2);
  const emvc::TransitionMatrix b = emvc::transition_matrix(c * x, c * c * sigma2);
  CHECK((a.p - b.p).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bandwidth modes square or keep the median distance") {
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 1.0, 3.0;
  CHECK(emvc::kernel_bandwidth(x, emvc::SigmaMode::kMedianSquared) == Approx(4.0));
  CHECK(emvc::kernel_bandwidth(x, emvc::SigmaMode::kMedianRaw) == Approx(2.0));
}

TEST_CASE("transition matrix validation catches bad matrices") {
  emvc::TransitionMatrix t{Eigen::MatrixXd::Ones(2, 3)};
  CHECK_THROWS_AS(t.validate(), emvc::ShapeError);
  t.p = Eigen::MatrixXd::Ones(2, 2);
  CHECK_THROWS_AS(t.validate(), emvc::NumericalError);
  t.p << 0.5, 0.5, -0.1, 1.1;
  CHECK_THROWS_AS(t.validate(), emvc::NumericalError);
}

TEST_CASE("similarity rejects non-positive bandwidth") {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 1.0;
  CHECK_THROWS_AS(emvc::similarity_matrix(x, 0.0), emvc::ConfigError);
}
