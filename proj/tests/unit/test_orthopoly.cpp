#include <doctest.h>

#include <Eigen/QR>

#include <cmath>

#include "xls/orthopoly.hpp"
#include "xls/quadrature.hpp"
#include "xls/rng.hpp"

using xls::MultiIndexSet;
using xls::PolynomialFamily;
using xls::TensorBasis;

namespace {

Eigen::VectorXd single(double z) {
  Eigen::VectorXd v(1);
  v[0] = z;
  return v;
}

} // namespace

TEST_CASE("first-degree normalizations of the classical families") {
  // Legendre under density 1/2: phi_1 = sqrt(3) z.
  const auto leg = xls::eval_univariate(PolynomialFamily::legendre(), 2, single(1.0));
  CHECK(leg(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  // Hermite under exp(-z^2)/sqrt(pi): phi_1 = sqrt(2) z.
  const auto her = xls::eval_univariate(PolynomialFamily::hermite(), 1, single(0.7));
  CHECK(her(0, 1) == doctest::Approx(std::sqrt(2.0) * 0.7).epsilon(1e-12));

  // Laguerre under exp(-z): |phi_1(z)| = |1 - z|; the recurrence fixes the
  // leading coefficient positive, so phi_1 = z - 1.
  const auto lag = xls::eval_univariate(PolynomialFamily::laguerre(), 1, single(0.3));
  CHECK(std::abs(lag(0, 1)) == doctest::Approx(std::abs(1.0 - 0.3)).epsilon(1e-12));
  CHECK(lag(0, 1) == doctest::Approx(0.3 - 1.0).epsilon(1e-12));

  // Legendre phi_2(0) = -sqrt(5)/2.
  const auto leg2 = xls::eval_univariate(PolynomialFamily::legendre(), 2, single(0.0));
  CHECK(leg2(0, 2) == doctest::Approx(-std::sqrt(5.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("chebyshev values at the right endpoint") {
  const int k = 6;
  const auto values = xls::eval_univariate(PolynomialFamily::chebyshev(), k, single(1.0));
  CHECK(values(0, 0) == doctest::Approx(1.0));
  for (int n = 1; n <= k; ++n) CHECK(values(0, n) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(values.row(0).squaredNorm() == doctest::Approx(2.0 * k + 1.0).epsilon(1e-12));
}

TEST_CASE("orthonormality against the family's own Gauss rule") {
  const int k = 40;
  for (const auto& family :
       {PolynomialFamily::legendre(), PolynomialFamily::chebyshev(),
        PolynomialFamily::jacobi(1.5, -0.5), PolynomialFamily::jacobi(4.0, 4.0),
        PolynomialFamily::hermite(), PolynomialFamily::laguerre()}) {
    const auto rule = xls::gauss_rule(family, 2 * k + 10);
    const auto phi = xls::eval_univariate(family, k, rule.nodes);
    Eigen::MatrixXd gram = phi.transpose() * rule.weights.asDiagonal() * phi;
    const double err = (gram - Eigen::MatrixXd::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff();
    INFO("family ", family.str());
    CHECK(err < 1e-10);
  }
}

TEST_CASE("kernel diagonal is basis independent") {
  const auto basis = TensorBasis::isotropic(PolynomialFamily::legendre(),
                                            MultiIndexSet::total_degree(2, 2));
  xls::Rng rng(5);
  Eigen::MatrixXd pts(40, 2);
  for (int s = 0; s < 40; ++s)
    for (int j = 0; j < 2; ++j) pts(s, j) = 2.0 * rng.uniform01() - 1.0;

  const Eigen::MatrixXd v = xls::vandermonde(basis, pts);
  const Eigen::VectorXd k_direct = xls::kernel_diagonal(basis, pts);

  // Random orthogonal recombination of the columns.
  Eigen::MatrixXd noise(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j) noise(i, j) = rng.normal();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(noise).householderQ();
  const Eigen::VectorXd k_rotated = (v * q).rowwise().squaredNorm();
  CHECK((k_rotated - k_direct).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kernel diagonal values") {
  // Chebyshev at z = 1: sum phi_n^2 = 2k+1.
  for (int k : {1, 3, 10}) {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::chebyshev(),
                                              MultiIndexSet::total_degree(1, k));
    Eigen::MatrixXd pt(1, 1);
    pt(0, 0) = 1.0;
    CHECK(xls::kernel_diagonal(basis, pt)[0] == doctest::Approx(2.0 * k + 1.0).epsilon(1e-12));
  }
  // Constant space: K = 1.
  {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::laguerre(),
                                              MultiIndexSet::total_degree(1, 0));
    Eigen::MatrixXd pt(1, 1);
    pt(0, 0) = 2.5;
    CHECK(xls::kernel_diagonal(basis, pt)[0] == doctest::Approx(1.0));
  }
  // Legendre degree-2 space at 0: 1 + 0 + 5/4.
  {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::legendre(),
                                              MultiIndexSet::total_degree(1, 2));
    Eigen::MatrixXd pt(1, 1);
    pt(0, 0) = 0.0;
    CHECK(xls::kernel_diagonal(basis, pt)[0] == doctest::Approx(2.25).epsilon(1e-12));
  }
}

TEST_CASE("vandermonde rows") {
  // N = 1: a column of ones.
  {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::hermite(),
                                              MultiIndexSet::total_degree(3, 0));
    Eigen::MatrixXd pts = Eigen::MatrixXd::Random(5, 3);
    const auto v = xls::vandermonde(basis, pts);
    REQUIRE(v.cols() == 1);
    CHECK((v.array() - 1.0).abs().maxCoeff() == 0.0);
  }
  // d = 1 Chebyshev at z = 1, degree 3: (1, sqrt2, sqrt2, sqrt2).
  {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::chebyshev(),
                                              MultiIndexSet::total_degree(1, 3));
    Eigen::MatrixXd pt(1, 1);
    pt(0, 0) = 1.0;
    const auto v = xls::vandermonde(basis, pt);
    CHECK(v(0, 0) == doctest::Approx(1.0));
    for (int n = 1; n <= 3; ++n) CHECK(v(0, n) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  // d = 2 Legendre at the origin, degree-1 space: (1, 0, 0).
  {
    const auto basis = TensorBasis::isotropic(PolynomialFamily::legendre(),
                                              MultiIndexSet::total_degree(2, 1));
    Eigen::MatrixXd pt = Eigen::MatrixXd::Zero(1, 2);
    const auto v = xls::vandermonde(basis, pt);
    CHECK(v(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(v(0, 1)) < 1e-15);
    CHECK(std::abs(v(0, 2)) < 1e-15);
  }
}

TEST_CASE("parity symmetry and recurrence stability at high degree") {
  for (const auto& family :
       {PolynomialFamily::legendre(), PolynomialFamily::jacobi(2.0, 2.0), PolynomialFamily::hermite()}) {
    const auto plus = xls::eval_univariate(family, 30, single(0.6));
    const auto minus = xls::eval_univariate(family, 30, single(-0.6));
    for (int n = 0; n <= 30; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(plus(0, n) == doctest::Approx(sign * minus(0, n)).epsilon(1e-10));
    }
  }
  for (const auto& family : {PolynomialFamily::legendre(), PolynomialFamily::chebyshev(),
                             PolynomialFamily::hermite(), PolynomialFamily::laguerre()}) {
    const double z = family.bounded() ? 0.93 : 7.5;
    const auto values = xls::eval_univariate(family, 100, single(z));
    for (int n = 0; n <= 100; ++n) CHECK(std::isfinite(values(0, n)));
  }
}

TEST_CASE("scaled family evaluations") {
  Eigen::VectorXd pts(3);
  pts << 0.1, 0.5, 1.2;

  // scale degree 1 is the identity scaling
  const auto plain = xls::eval_univariate(PolynomialFamily::hermite(), 5, pts);
  const auto scaled1 = xls::scaled_family_eval(PolynomialFamily::hermite(), 1, 5, pts);
  CHECK((plain - scaled1).cwiseAbs().maxCoeff() < 1e-14);

  // Hermite, k = 4: 4^(1/4) phi(2z)
  const auto scaled4 = xls::scaled_family_eval(PolynomialFamily::hermite(), 4, 5, pts);
  const auto shifted = xls::eval_univariate(PolynomialFamily::hermite(), 5, (2.0 * pts.array()).matrix());
  CHECK((scaled4 - std::pow(4.0, 0.25) * shifted).cwiseAbs().maxCoeff() < 1e-12);

  // Laguerre, k = 3: sqrt(3) phi(3z)
  const auto lag3 = xls::scaled_family_eval(PolynomialFamily::laguerre(), 3, 4, pts);
  const auto lag_shift = xls::eval_univariate(PolynomialFamily::laguerre(), 4, (3.0 * pts.array()).matrix());
  CHECK((lag3 - std::sqrt(3.0) * lag_shift).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS(xls::scaled_family_eval(PolynomialFamily::legendre(), 2, 3, pts));
}

TEST_CASE("scaled families are orthonormal under the varying weight") {
  // int phi^(k)_m phi^(k)_n exp(-k z^2)/sqrt(pi) dz = delta_{mn}; the
  // substitution z = x/sqrt(k) reduces this to the family's own
  // probability rule.
  const int k = 4;
  const int deg = 6;
  const auto rule = xls::gauss_rule(PolynomialFamily::hermite(), 60);
  Eigen::VectorXd nodes = rule.nodes / std::sqrt(static_cast<double>(k));
  const auto phi = xls::scaled_family_eval(PolynomialFamily::hermite(), k, deg, nodes);
  Eigen::VectorXd w = rule.weights / std::sqrt(static_cast<double>(k));
  Eigen::MatrixXd gram = phi.transpose() * w.asDiagonal() * phi;
  const double err = (gram - Eigen::MatrixXd::Identity(deg + 1, deg + 1)).cwiseAbs().maxCoeff();
  CHECK(err < 1e-10);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(xls::eval_univariate(PolynomialFamily::laguerre(), 2, single(-1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(xls::eval_univariate(PolynomialFamily::legendre(), 2, single(1.5)),
                  std::domain_error);
  CHECK_NOTHROW(xls::eval_univariate(PolynomialFamily::legendre(), 2, single(1.0 + 1e-13)));
  CHECK_THROWS(PolynomialFamily::jacobi(-1.0, 0.0));
}

TEST_CASE("family parsing") {
  CHECK(PolynomialFamily::parse("legendre") == PolynomialFamily::legendre());
  CHECK(PolynomialFamily::parse("chebyshev") == PolynomialFamily::chebyshev());
  CHECK(PolynomialFamily::parse("jacobi(1.5,-0.5)") == PolynomialFamily::jacobi(1.5, -0.5));
  CHECK(PolynomialFamily::parse("hermite") == PolynomialFamily::hermite());
  CHECK_THROWS(PolynomialFamily::parse("fourier"));
}
