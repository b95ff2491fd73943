#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

#include "xls/orthopoly.hpp"

namespace xls {

// Gauss rule produced from recurrence coefficients by the symmetric
// tridiagonal (Golub-Welsch) construction. Weights sum to the target
// measure's total mass.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  std::string target_measure;

  double mass() const { return weights.sum(); }
  int size() const { return static_cast<int>(nodes.size()); }
};

// n-node Gauss rule for the family's probability density (mass 1).
QuadratureRule gauss_rule(const PolynomialFamily& family, int n_nodes);

// n-node Gauss-Jacobi rule for the raw weight (1-x)^a (1+x)^b on [-1,1];
// mass = 2^(a+b+1) B(a+1, b+1).
QuadratureRule gauss_jacobi_raw(double a, double b, int n_nodes);

// Integrates g(x) * (x-lo)^expo_left * (hi-x)^expo_right over [lo, hi] by a
// mapped Gauss-Jacobi rule that absorbs the endpoint factors exactly.
double integrate_panel(const std::function<double(double)>& g, double lo, double hi,
                       double expo_left, double expo_right, int n_nodes);

namespace detail {
// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix (implicit-shift QL); the O(n^2) kernel behind Golub-Welsch.
void tridiag_eigen_first_row(std::vector<double>& diag, std::vector<double>& sub,
                             std::vector<double>& first_row);
} // namespace detail

} // namespace xls
