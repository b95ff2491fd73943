#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "xls/multiindex.hpp"
#include "xls/orthopoly.hpp"
#include "xls/quadrature.hpp"

namespace xls {

// ||K_k||_inf / N for a bounded one-dimensional family: the sample-count
// factor of the unweighted Monte Carlo stability criterion. The maximum is
// taken over a dense Chebyshev-spaced grid including both endpoints (where
// it is attained for the Jacobi parameter range of interest).
double stability_factor(const PolynomialFamily& family, int degree);

// Spectrum report for the discrepancy Gramian R of a one-dimensional index
// set: (R)_{ab} = int phi_a phi_b (N/K) dmu with mu the (weighted)
// equilibrium measure.
struct DiscrepancyReport {
  Eigen::MatrixXd r_matrix;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  double frobenius_dist_to_identity = 0.0;
  bool quadrature_converged = false;
};

// Bounded case: mu is the arcsine measure on [-1,1]; arcsine-Gauss nodes
// with node-doubling until every entry moves by less than 1e-10.
DiscrepancyReport r_matrix_bounded(const PolynomialFamily& family, const MultiIndexSet& set);

// Unbounded case (Hermite/Laguerre): the integral over the expanded support
// is computed on the unit support of the weighted equilibrium measure using
// the w^k-orthonormal family; the endpoint exponents of the measure are
// absorbed by a matching Gauss-Jacobi rule.
DiscrepancyReport r_matrix_unbounded(const PolynomialFamily& family, const MultiIndexSet& set);

// A univariate integrand with known interior breakpoints; quadratures split
// panels there so piecewise-smooth targets converge at full rate.
struct Function1d {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
};

struct ProjectionDiscrepancy {
  double data_discrepancy = 0.0; // d(f) = || proj_{w~} f - proj_w f ||_w
  double delta = 0.0;            // suboptimality ratio Delta(f); see below
  bool delta_defined = false;    // false when f lies in P (zero best error)
  bool quadrature_converged = false;
};

// Computes d(f) and
//   Delta(f) = ||g||^2_{w~} / (lambda_min(R) ||g||^2_w)
//            + 4 kappa^2(R) d^2(f) / ||g||^2_w,   g = f - proj_w f,
// for a bounded one-dimensional family. Projections are evaluated by Gauss
// quadrature; the w~ projection solves R d = h with h the w~ moments.
ProjectionDiscrepancy projection_discrepancy(const Function1d& f, const PolynomialFamily& family,
                                             const MultiIndexSet& set);

// Piecewise polynomial on [-1,1] with ascending-power coefficients per
// piece; piece i covers (breaks[i-1], breaks[i]].
struct PiecewisePolynomial {
  std::vector<double> breaks;               // interior breakpoints, ascending
  std::vector<std::vector<double>> pieces;  // breaks.size() + 1 coefficient sets

  double operator()(double z) const;
  // F with F(-1) = 0, continuous across breakpoints.
  PiecewisePolynomial antiderivative() const;
};

// The smoothness ladder used by the discrepancy study: f0 is +1 for
// z <= 1/2 and -1 above; each successive member integrates the previous
// from -1, gaining one derivative in L^2.
Function1d test_function_fq(int q);
PiecewisePolynomial test_function_fq_polynomial(int q);

} // namespace xls
