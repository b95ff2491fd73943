#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "xls/orthopoly.hpp"
#include "xls/sampling.hpp"

namespace xls {

using TargetEvaluator = std::function<double(const Eigen::VectorXd&)>;

// One assembled weighted least-squares instance: minimize over g of
// || sqrt(K) V g - sqrt(K) f || with K = diag(weights).
struct LsProblem {
  TensorBasis basis;
  SampleEnsemble ensemble;
  Eigen::VectorXd rhs;     // f(z_s)
  Eigen::VectorXd weights; // k_s > 0
};

enum class RankFlag { FullRank, RankDeficient };

struct LsSolution {
  Eigen::VectorXd coefficients;
  double condition_number = 1.0; // sigma_max/sigma_min of sqrt(K) V
  double residual_norm = 0.0;    // || sqrt(K) (V c - f) ||
  RankFlag rank_flag = RankFlag::FullRank;
};

// k_s = N / K(z_s); each row of sqrt(K) V then has squared norm exactly N.
// Requires the zero index in the set so that K > 0 everywhere.
Eigen::VectorXd christoffel_weights(const TensorBasis& basis, const SampleEnsemble& ensemble);

// Solves the weighted problem through a QR factorization of sqrt(K) V
// followed by an SVD of the triangular factor; never forms the normal
// equations. Rank-deficient systems (sigma_min/sigma_max < 1e-14) are
// resolved with pseudo-inverse semantics and flagged.
LsSolution solve(const LsProblem& problem);

// Condition number of sqrt(K) V alone (no right-hand side needed).
double weighted_condition_number(const TensorBasis& basis, const SampleEnsemble& ensemble,
                                 const Eigen::VectorXd& weights);

// G = (1/S) V^T K V, the discrete Gramian. Diagnostic only; solve() does
// not go through it.
Eigen::MatrixXd gramian(const LsProblem& problem);

// Unweighted Monte Carlo least squares: sample from the orthogonality
// density, unit weights.
LsSolution run_mc(const TensorBasis& basis, const TargetEvaluator& f, int count, std::uint64_t seed);

// Christoffel least squares on a compact domain: equilibrium-measure
// samples on the cube, Christoffel-function weights.
LsSolution run_cls_bounded(const TensorBasis& basis, const TargetEvaluator& f, int count,
                           std::uint64_t seed);

// Christoffel least squares for the Hermite/Laguerre families: samples from
// the degree-expanded weighted equilibrium measure, Christoffel weights.
LsSolution run_cls_unbounded(const TensorBasis& basis, const TargetEvaluator& f, int count,
                             std::uint64_t seed);

// T_L applied elementwise: sgn(x) min(|x|, L).
Eigen::VectorXd truncate(const Eigen::VectorXd& values, double limit);

} // namespace xls
