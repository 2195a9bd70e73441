#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "emvc/prox.hpp"
#include "emvc/rng.hpp"
#include "support/oracles.hpp"

using Catch::Approx;

TEST_CASE("shrink matches its closed form") {
  CHECK(emvc::shrink(3.0, 1.0) == Approx(2.0));
  CHECK(emvc::shrink(-0.5, 1.0) == 0.0);
  CHECK(emvc::shrink(-4.0, 1.5) == Approx(-2.5));
  CHECK(emvc::shrink(0.7, 0.7) == 0.0);

  Eigen::MatrixXd m(2, 2);
  m << 3.0, -0.5, -4.0, 0.0;
  const Eigen::MatrixXd s = emvc::shrink(m, 1.0);
  CHECK(s(0, 0) == Approx(2.0));
  CHECK(s(0, 1) == 0.0);
  CHECK(s(1, 0) == Approx(-3.0));
  CHECK(s(1, 1) == 0.0);
}

TEST_CASE("svt shrinks diagonal matrices entrywise") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const Eigen::MatrixXd q = emvc::svt(m, 2.0);
  CHECK(q(0, 0) == Approx(1.0).margin(1e-12));
  CHECK(q(0, 1) == Approx(0.0).margin(1e-12));
  CHECK(q(1, 0) == Approx(0.0).margin(1e-12));
  CHECK(q(1, 1) == Approx(0.0).margin(1e-12));
}

TEST_CASE("svt of the zero matrix is zero") {
  const Eigen::MatrixXd q = emvc::svt(Eigen::MatrixXd::Zero(4, 4), 0.3);
  CHECK(q.isZero(0.0));
}

TEST_CASE("svt restores signs on negative diagonals") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m.diagonal() << -3.0, 2.0, -0.2;
  const Eigen::MatrixXd q = emvc::svt(m, 0.5);
  CHECK(q(0, 0) == Approx(-2.5).margin(1e-12));
  CHECK(q(1, 1) == Approx(1.5).margin(1e-12));
  CHECK(q(2, 2) == Approx(0.0).margin(1e-12));
}

TEST_CASE("svt agrees with an independent SVD oracle") {
  emvc::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(7));
    const Eigen::MatrixXd m = oracles::random_matrix(rng, n, n, -2.0, 2.0);
    const double tau = rng.uniform(0.05, 1.5);
    const Eigen::MatrixXd got = emvc::svt(m, tau);
    const Eigen::MatrixXd want = oracles::svt(m, tau);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("svt output singular values are the shrunken input singular values") {
  emvc::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(9));
    const Eigen::MatrixXd m = oracles::random_matrix(rng, n, n, -1.0, 1.0);
    const double tau = rng.uniform(0.01, 1.0);
    const Eigen::VectorXd in_sv = oracles::singular_values(m);
    const Eigen::VectorXd out_sv = oracles::singular_values(emvc::svt(m, tau));
    for (Eigen::Index i = 0; i < in_sv.size(); ++i) {
      CHECK(out_sv(i) == Approx(std::max(in_sv(i) - tau, 0.0)).margin(1e-8));
    }
  }
}

TEST_CASE("svt returns a local minimizer of the nuclear-norm prox objective") {
  emvc::Rng rng(11);
  const Eigen::MatrixXd m = oracles::random_matrix(rng, 4, 4, -1.0, 1.0);
  const double tau = 0.5;
  const Eigen::MatrixXd q = emvc::svt(m, tau);
  const double at_q = tau * oracles::nuclear_norm(q) + 0.5 * (q - m).squaredNorm();
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd delta = oracles::random_matrix(rng, 4, 4, -1.0, 1.0);
    delta *= 1e-3 / delta.norm();
    const Eigen::MatrixXd probe = q + delta;
    const double at_probe =
        tau * oracles::nuclear_norm(probe) + 0.5 * (probe - m).squaredNorm();
    CHECK(at_q <= at_probe + 1e-12);
  }
}

TEST_CASE("svt rejects bad inputs") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(2, 2);
  CHECK_THROWS_AS(emvc::svt(m, 0.0), emvc::ConfigError);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(emvc::svt(m, 0.5), emvc::NumericalError);
}

TEST_CASE("project_simplex handles the analytic cases") {
  Eigen::VectorXd c(2);
  c << 0.5, 0.5;
  CHECK((emvc::project_simplex(c) - c).cwiseAbs().maxCoeff() < 1e-15);

  c << 2.0, 0.0;
  Eigen::VectorXd want(2);
  want << 1.0, 0.0;
  CHECK((emvc::project_simplex(c) - want).cwiseAbs().maxCoeff() < 1e-15);

  c << 0.6, 0.6;
  want << 0.5, 0.5;
  CHECK((emvc::project_simplex(c) - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("project_simplex output lies on the simplex and is idempotent") {
  emvc::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_int(9));
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) {
      c(i) = rng.uniform(-3.0, 3.0);
    }
    const Eigen::VectorXd p = emvc::project_simplex(c);
    CHECK((p.array() >= 0.0).all());
    CHECK(p.sum() == Approx(1.0).margin(1e-9));
    const Eigen::VectorXd again = emvc::project_simplex(p);
    CHECK((again - p).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("project_simplex matches the enumeration QP oracle") {
  emvc::Rng rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_int(9));
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) {
      c(i) = rng.uniform(-2.0, 2.0);
    }
    const Eigen::VectorXd got = emvc::project_simplex(c);
    const Eigen::VectorXd want = oracles::simplex_projection(c);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("group_l1_norm sums per-view column segment norms") {
  CHECK(emvc::group_l1_norm(Eigen::MatrixXd::Zero(6, 3), 2, 3) == 0.0);

  Eigen::MatrixXd single = Eigen::MatrixXd::Zero(2, 2);
  single(1, 0) = 3.0;
  CHECK(emvc::group_l1_norm(single, 1, 2) == Approx(3.0));

  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(4, 2);
  e(0, 0) = 3.0;  // view 1 segment of column 1: (3, 4)
  e(1, 0) = 4.0;
  CHECK(emvc::group_l1_norm(e, 2, 2) == Approx(5.0));

  CHECK_THROWS_AS(emvc::group_l1_norm(e, 2, 3), emvc::ShapeError);
}

TEST_CASE("l21_norm sums row norms") {
  CHECK(emvc::l21_norm(Eigen::MatrixXd::Identity(2, 2)) == Approx(2.0));
  CHECK(emvc::l21_norm(Eigen::MatrixXd::Zero(3, 3)) == 0.0);
  Eigen::MatrixXd e(2, 2);
  e << 3.0, 4.0, 0.0, 0.0;
  CHECK(emvc::l21_norm(e) == Approx(5.0));
}

TEST_CASE("structured norms are absolutely homogeneous") {
  emvc::Rng rng(9);
  const Eigen::MatrixXd e = oracles::random_matrix(rng, 8, 4, -1.0, 1.0);
  for (double alpha : {-2.5, -0.1, 0.3, 7.0}) {
    CHECK(emvc::l21_norm(alpha * e) ==
          Approx(std::abs(alpha) * emvc::l21_norm(e)).epsilon(1e-10));
    CHECK(emvc::group_l1_norm(alpha * e, 2, 4) ==
          Approx(std::abs(alpha) * emvc::group_l1_norm(e, 2, 4)).epsilon(1e-10));
  }
}

TEST_CASE("nuclear_norm matches the Jacobi SVD oracle") {
  emvc::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(11));
    const Eigen::MatrixXd m = oracles::random_matrix(rng, n, n, -1.0, 1.0);
    CHECK(emvc::nuclear_norm(m) == Approx(oracles::nuclear_norm(m)).margin(1e-10));
  }
}
