#include <doctest.h>

#include <cmath>

#include "xls/rng.hpp"

using xls::Rng;

TEST_CASE("streams are reproducible and tag-separated") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CHECK(xls::derive_seed(1, "x") != xls::derive_seed(1, "y"));
  CHECK(xls::derive_seed(1, "x") != xls::derive_seed(2, "x"));
  CHECK(xls::derive_seed(7, "tag") == xls::derive_seed(7, "tag"));
}

TEST_CASE("uniform01 stays in [0,1), uniform_open in (0,1)") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("normal and gamma match their first two moments") {
  Rng rng(17);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum_sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));

  for (double shape : {0.5, 1.5, 4.0}) {
    double g_sum = 0.0, g_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.gamma(shape);
      g_sum += x;
      g_sq += x * x;
    }
    const double mean = g_sum / n;
    const double var = g_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.02));
    CHECK(var == doctest::Approx(shape).epsilon(0.05));
  }
}

TEST_CASE("beta and dirichlet moments") {
  Rng rng(99);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.beta(0.5, 1.5);
  CHECK(sum / n == doctest::Approx(0.25).epsilon(0.02));

  std::vector<double> alpha{0.5, 0.5, 1.5};
  std::vector<double> mean(3, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto w = rng.dirichlet(alpha);
    for (int j = 0; j < 3; ++j) mean[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(j)];
  }
  CHECK(mean[0] / n == doctest::Approx(0.2).epsilon(0.02));
  CHECK(mean[2] / n == doctest::Approx(0.6).epsilon(0.02));
}
