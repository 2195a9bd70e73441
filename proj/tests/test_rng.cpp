#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "emvc/rng.hpp"

using Catch::Approx;

TEST_CASE("identical seeds give identical streams") {
  emvc::Rng a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
  }
}

TEST_CASE("uniform stays in [0, 1) and has the right mean") {
  emvc::Rng rng(1);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == Approx(0.5).margin(0.01));
}

TEST_CASE("uniform_int covers its range without bias") {
  emvc::Rng rng(2);
  int counts[7] = {0};
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    counts[rng.uniform_int(7)] += 1;
  }
  for (int c : counts) {
    CHECK(std::abs(c - n / 7) < 600);
  }
}

TEST_CASE("normal has zero mean and unit variance") {
  emvc::Rng rng(3);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(sum / n == Approx(0.0).margin(0.01));
  CHECK(sq / n == Approx(1.0).margin(0.02));
}

TEST_CASE("mix_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
      seen.insert(emvc::mix_seed(seed, stream));
    }
  }
  CHECK(seen.size() == 400);
}
