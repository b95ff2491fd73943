#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

#include "xls/multiindex.hpp"

namespace xls {

// A univariate orthonormal polynomial family. The defining weight is always
// normalized to a probability density, so phi_0 == 1:
//   Jacobi(a,b):  (1-z)^a (1+z)^b / (2^(a+b+1) B(a+1,b+1))  on [-1,1]
//   Hermite:      exp(-z^2)/sqrt(pi)                        on R
//   Laguerre:     exp(-z)                                   on [0,inf)
// Legendre = Jacobi(0,0), Chebyshev = Jacobi(-1/2,-1/2).
class PolynomialFamily {
public:
  enum class Kind { Jacobi, Hermite, Laguerre };

  static PolynomialFamily jacobi(double a, double b);
  static PolynomialFamily legendre() { return jacobi(0.0, 0.0); }
  static PolynomialFamily chebyshev() { return jacobi(-0.5, -0.5); }
  static PolynomialFamily hermite();
  static PolynomialFamily laguerre();

  // Accepts "legendre", "chebyshev", "jacobi(a,b)", "hermite", "laguerre".
  static PolynomialFamily parse(std::string_view name);

  Kind kind() const { return kind_; }
  double jacobi_a() const { return a_; }
  double jacobi_b() const { return b_; }
  bool bounded() const { return kind_ == Kind::Jacobi; }

  // Homogeneity order t of Q = -log(w)/2: 2 for Hermite, 1 for Laguerre.
  int homogeneity_order() const;

  bool in_domain(double z) const; // 1e-12 tolerance at domain boundaries
  double weight_density(double z) const;

  std::string str() const;
  bool operator==(const PolynomialFamily& other) const;

private:
  PolynomialFamily(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

// Orthonormal three-term recurrence
//   b_{n+1} phi_{n+1}(z) = (z - a_n) phi_n(z) - b_n phi_{n-1}(z),
// with phi_{-1} = 0 and phi_0 = 1. Entry n holds (a_n, b_n); b_0 is unused
// by the recurrence and set to 1 (the weight's total mass).
struct RecurrencePair {
  double a;
  double b;
};
std::vector<RecurrencePair> recurrence_coefficients(const PolynomialFamily& family, int n_max);

// Entry (s, n) = phi_n(z_s) for degrees 0..max_degree.
Eigen::MatrixXd eval_univariate(const PolynomialFamily& family, int max_degree,
                                const Eigen::VectorXd& points);

// Family orthonormal under w^k for the unbounded families:
//   phi^(k)_n(z) = k^(1/(2t)) phi_n(k^(1/t) z).
// scale_degree is k; only Hermite/Laguerre are allowed.
Eigen::MatrixXd scaled_family_eval(const PolynomialFamily& family, int scale_degree,
                                   int max_degree, const Eigen::VectorXd& points);

// Tensor-product basis phi_alpha(z) = prod_j phi_{alpha_j}(z_j) over a
// multi-index set.
class TensorBasis {
public:
  TensorBasis(std::vector<PolynomialFamily> families, MultiIndexSet indices);
  // Same family in every coordinate.
  static TensorBasis isotropic(const PolynomialFamily& family, MultiIndexSet indices);

  int dim() const { return indices_.dim(); }
  int size() const { return indices_.size(); } // N
  const std::vector<PolynomialFamily>& families() const { return families_; }
  const MultiIndexSet& indices() const { return indices_; }

  bool all_bounded() const;
  // True when every coordinate family is the same unbounded kind.
  bool all_hermite() const;
  bool all_laguerre() const;

private:
  std::vector<PolynomialFamily> families_;
  MultiIndexSet indices_;
};

// S x N Vandermonde-like matrix, (V)_{s,n} = phi_{alpha(n)}(z_s); column
// order follows the index set's ordering.
Eigen::MatrixXd vandermonde(const TensorBasis& basis, const Eigen::MatrixXd& points);

// K(z_s) = sum_alpha phi_alpha^2(z_s), the reproducing kernel diagonal.
Eigen::VectorXd kernel_diagonal(const TensorBasis& basis, const Eigen::MatrixXd& points);

// p(z_s) = sum_alpha c_alpha phi_alpha(z_s).
Eigen::VectorXd evaluate_expansion(const TensorBasis& basis, const Eigen::VectorXd& coefficients,
                                   const Eigen::MatrixXd& points);

} // namespace xls
