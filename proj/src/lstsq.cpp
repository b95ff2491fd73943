#include "xls/lstsq.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xls {

namespace {

constexpr double kRankTol = 1e-14;

void check_problem(const LsProblem& problem) {
  const int S = problem.ensemble.count();
  if (problem.rhs.size() != S) throw std::invalid_argument("lstsq: rhs length != sample count");
  if (problem.weights.size() != S) throw std::invalid_argument("lstsq: weight length != sample count");
  if ((problem.weights.array() <= 0.0).any())
    throw std::invalid_argument("lstsq: weights must be positive");
  if (problem.ensemble.dim() != problem.basis.dim())
    throw std::invalid_argument("lstsq: ensemble/basis dimension mismatch");
}

Eigen::VectorXd rhs_from(const TargetEvaluator& f, const SampleEnsemble& ensemble) {
  Eigen::VectorXd values(ensemble.count());
  for (int s = 0; s < ensemble.count(); ++s) values[s] = f(ensemble.points.row(s).transpose());
  return values;
}

// Singular values of the weighted design matrix via QR then SVD of the
// triangular factor; optionally solves against qtb.
struct DesignSvd {
  Eigen::BDCSVD<Eigen::MatrixXd> svd;
  Eigen::VectorXd qtb; // leading N entries of Q^T b (empty when no rhs)
};

DesignSvd factor_design(const Eigen::MatrixXd& weighted_v, const Eigen::VectorXd* weighted_rhs) {
  const Eigen::Index n = weighted_v.cols();
  if (weighted_v.rows() < n)
    throw std::invalid_argument("lstsq: sample count below basis dimension (S < N)");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(weighted_v);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  DesignSvd out;
  out.svd.compute(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (weighted_rhs) {
    Eigen::VectorXd qtb = qr.householderQ().transpose() * (*weighted_rhs);
    out.qtb = qtb.head(n);
  }
  return out;
}

double condition_from(const Eigen::BDCSVD<Eigen::MatrixXd>& svd) {
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (smax == 0.0) return std::numeric_limits<double>::infinity();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

} // namespace

Eigen::VectorXd christoffel_weights(const TensorBasis& basis, const SampleEnsemble& ensemble) {
  const Eigen::VectorXd k = kernel_diagonal(basis, ensemble.points);
  if ((k.array() <= 0.0).any())
    throw std::logic_error("christoffel_weights: kernel diagonal not positive; "
                           "the index set must contain the zero index");
  return static_cast<double>(basis.size()) / k.array();
}

LsSolution solve(const LsProblem& problem) {
  check_problem(problem);
  const Eigen::ArrayXd root_w = problem.weights.array().sqrt();
  Eigen::MatrixXd wv = vandermonde(problem.basis, problem.ensemble.points);
  wv.array().colwise() *= root_w;
  const Eigen::VectorXd wb = (root_w * problem.rhs.array()).matrix();

  DesignSvd design = factor_design(wv, &wb);
  const auto& sigma = design.svd.singularValues();
  const double smax = sigma(0);

  LsSolution solution;
  solution.condition_number = condition_from(design.svd);
  solution.rank_flag = RankFlag::FullRank;
  // Pseudo-inverse with truncation at the rank tolerance; rank-deficient
  // systems still produce a solution.
  Eigen::VectorXd inv_sigma = sigma;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= smax * kRankTol || sigma(i) == 0.0) {
      inv_sigma(i) = 0.0;
      solution.rank_flag = RankFlag::RankDeficient;
    } else {
      inv_sigma(i) = 1.0 / sigma(i);
    }
  }
  solution.coefficients = design.svd.matrixV() *
                          (inv_sigma.array() * (design.svd.matrixU().transpose() * design.qtb).array()).matrix();
  solution.residual_norm = (wv * solution.coefficients - wb).norm();
  return solution;
}

double weighted_condition_number(const TensorBasis& basis, const SampleEnsemble& ensemble,
                                 const Eigen::VectorXd& weights) {
  if (weights.size() != ensemble.count())
    throw std::invalid_argument("weighted_condition_number: weight length mismatch");
  Eigen::MatrixXd wv = vandermonde(basis, ensemble.points);
  wv.array().colwise() *= weights.array().sqrt();
  return condition_from(factor_design(wv, nullptr).svd);
}

Eigen::MatrixXd gramian(const LsProblem& problem) {
  check_problem(problem);
  Eigen::MatrixXd wv = vandermonde(problem.basis, problem.ensemble.points);
  wv.array().colwise() *= problem.weights.array().sqrt();
  return (wv.transpose() * wv) / static_cast<double>(problem.ensemble.count());
}

LsSolution run_mc(const TensorBasis& basis, const TargetEvaluator& f, int count, std::uint64_t seed) {
  LsProblem problem{basis, sample_orthogonality(basis, count, seed), {}, {}};
  problem.rhs = rhs_from(f, problem.ensemble);
  problem.weights = Eigen::VectorXd::Ones(count);
  return solve(problem);
}

LsSolution run_cls_bounded(const TensorBasis& basis, const TargetEvaluator& f, int count,
                           std::uint64_t seed) {
  if (!basis.all_bounded())
    throw std::invalid_argument("run_cls_bounded: requires bounded (Jacobi) families");
  LsProblem problem{basis, sample_equilibrium_cube(basis.dim(), count, seed), {}, {}};
  problem.rhs = rhs_from(f, problem.ensemble);
  problem.weights = christoffel_weights(basis, problem.ensemble);
  return solve(problem);
}

LsSolution run_cls_unbounded(const TensorBasis& basis, const TargetEvaluator& f, int count,
                             std::uint64_t seed) {
  // Expansion degree k = max degree of the set; a constant-only set keeps
  // the unexpanded measure (k = 1 means no scaling).
  const int k = std::max(1, basis.indices().max_degree());
  SampleEnsemble ensemble;
  if (basis.all_hermite())
    ensemble = sample_equilibrium_hermite(basis.dim(), k, count, seed);
  else if (basis.all_laguerre())
    ensemble = sample_equilibrium_laguerre(basis.dim(), k, count, seed);
  else
    throw std::invalid_argument("run_cls_unbounded: requires all-Hermite or all-Laguerre families");
  LsProblem problem{basis, std::move(ensemble), {}, {}};
  problem.rhs = rhs_from(f, problem.ensemble);
  problem.weights = christoffel_weights(basis, problem.ensemble);
  return solve(problem);
}

Eigen::VectorXd truncate(const Eigen::VectorXd& values, double limit) {
  if (limit < 0.0) throw std::invalid_argument("truncate: limit must be >= 0");
  Eigen::VectorXd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (std::abs(out[i]) > limit) out[i] = std::copysign(limit, out[i]);
  }
  return out;
}

} // namespace xls
