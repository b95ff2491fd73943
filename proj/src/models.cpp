#include "xls/models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <vector>

namespace xls {

TargetFunction f_gaussian_bump(int dim) {
  if (dim < 1) throw std::invalid_argument("f_gaussian_bump: dim must be >= 1");
  TargetFunction f;
  f.name = "gaussian-bump";
  f.dim = dim;
  f.domain = DomainTag::AllSpace;
  f.evaluate = [](const Eigen::VectorXd& z) { return std::exp(-z.squaredNorm()); };
  return f;
}

TargetFunction f_exponential(int dim) {
  if (dim < 1) throw std::invalid_argument("f_exponential: dim must be >= 1");
  TargetFunction f;
  f.name = "exponential";
  f.dim = dim;
  f.domain = DomainTag::AllSpace;
  f.evaluate = [](const Eigen::VectorXd& z) { return std::exp(-z.sum()); };
  return f;
}

DiffusionModel::DiffusionModel(int kl_terms, double abar, double sigma_a, double l_c, int n_x)
    : kl_terms_(kl_terms), abar_(abar), sigma_a_(sigma_a) {
  if (kl_terms < 1) throw std::invalid_argument("DiffusionModel: kl_terms must be >= 1");
  if (n_x < 64) throw std::invalid_argument("DiffusionModel: n_x must be >= 64");
  if (!(l_c > 0.0)) throw std::invalid_argument("DiffusionModel: l_c must be positive");

  grid_ = Eigen::VectorXd::LinSpaced(n_x, 0.0, 1.0);
  const double h = 1.0 / (n_x - 1);
  Eigen::VectorXd quad_w = Eigen::VectorXd::Constant(n_x, h);
  quad_w[0] = quad_w[n_x - 1] = 0.5 * h;

  // Nystrom discretization of the covariance operator, symmetrized so a
  // self-adjoint eigensolve applies.
  Eigen::MatrixXd b(n_x, n_x);
  for (int i = 0; i < n_x; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double dx = (grid_[i] - grid_[j]) / l_c;
      const double value = std::exp(-dx * dx) * std::sqrt(quad_w[i] * quad_w[j]);
      b(i, j) = value;
      b(j, i) = value;
    }
  }
  trace_ = b.trace();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  eigenvalues_.resize(kl_terms);
  eigenfunctions_.resize(n_x, kl_terms);
  for (int k = 0; k < kl_terms; ++k) {
    const int idx = n_x - 1 - k; // eigenvalues come back ascending
    const double lambda = eig.eigenvalues()[idx];
    if (!(lambda > 0.0)) throw std::runtime_error("DiffusionModel: covariance eigenvalue not positive");
    eigenvalues_[k] = lambda;
    Eigen::VectorXd phi = eig.eigenvectors().col(idx).array() / quad_w.array().sqrt();
    // Deterministic sign, stable across grid resolutions: antisymmetric
    // modes have two equal-magnitude extremes, so plain argmax tie-breaking
    // would flip with grid parity. Anchor on the first node reaching half
    // the maximum instead.
    const double half_max = 0.5 * phi.cwiseAbs().maxCoeff();
    for (int i = 0; i < n_x; ++i) {
      if (std::abs(phi[i]) >= half_max) {
        if (phi[i] < 0.0) phi = -phi;
        break;
      }
    }
    eigenfunctions_.col(k) = phi;
  }
}

Eigen::VectorXd DiffusionModel::diffusivity(const Eigen::VectorXd& z) const {
  if (z.size() != kl_terms_) throw std::invalid_argument("DiffusionModel: input dimension mismatch");
  Eigen::VectorXd a = Eigen::VectorXd::Constant(grid_.size(), abar_);
  for (int k = 0; k < kl_terms_; ++k)
    a += sigma_a_ * std::sqrt(eigenvalues_[k]) * z[k] * eigenfunctions_.col(k);
  if ((a.array() <= 1e-8).any())
    throw ModelError("DiffusionModel: diffusivity lost positivity", z);
  return a;
}

Eigen::VectorXd DiffusionModel::solve_profile(const Eigen::VectorXd& z) const {
  const Eigen::VectorXd a = diffusivity(z);
  const int n = static_cast<int>(grid_.size());
  const double h = 1.0 / (n - 1);
  const int m = n - 2; // interior unknowns

  // Conservative second-order scheme with harmonic-mean face coefficients;
  // Thomas solve of the resulting tridiagonal system.
  Eigen::VectorXd face(n - 1);
  for (int i = 0; i < n - 1; ++i) face[i] = 2.0 * a[i] * a[i + 1] / (a[i] + a[i + 1]);

  Eigen::VectorXd diag(m), lower(m), upper(m), rhs = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < m; ++i) {
    diag[i] = (face[i] + face[i + 1]) / (h * h);
    lower[i] = -face[i] / (h * h);      // couples to u_{i-1}
    upper[i] = -face[i + 1] / (h * h);  // couples to u_{i+1}
  }
  for (int i = 1; i < m; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u[m] = rhs[m - 1] / diag[m - 1];
  for (int i = m - 2; i >= 0; --i) u[i + 1] = (rhs[i] - upper[i] * u[i + 2]) / diag[i];
  return u;
}

double DiffusionModel::evaluate(const Eigen::VectorXd& z) const {
  const Eigen::VectorXd u = solve_profile(z);
  const int n = static_cast<int>(grid_.size());
  const double h = 1.0 / (n - 1);
  const double x = 1.0 / 3.0;
  // Quadratic interpolation through the three nodes around x = 1/3.
  int center = static_cast<int>(std::lround(x / h));
  center = std::max(1, std::min(n - 2, center));
  const double x0 = grid_[center - 1], x1 = grid_[center], x2 = grid_[center + 1];
  const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
  return l0 * u[center - 1] + l1 * u[center] + l2 * u[center + 1];
}

void DiffusionModel::write_kl_csv(std::ostream& out) const {
  out << "# kl eigenvalues:";
  for (int k = 0; k < kl_terms_; ++k) out << ' ' << eigenvalues_[k];
  out << "\nx";
  for (int k = 0; k < kl_terms_; ++k) out << ",phi_" << (k + 1);
  out << "\n";
  for (int i = 0; i < grid_.size(); ++i) {
    out << grid_[i];
    for (int k = 0; k < kl_terms_; ++k) out << ',' << eigenfunctions_(i, k);
    out << "\n";
  }
}

TargetFunction build_diffusion(int kl_terms, double abar, double sigma_a, double l_c, int n_x) {
  auto model = std::make_shared<DiffusionModel>(kl_terms, abar, sigma_a, l_c, n_x);
  TargetFunction f;
  f.name = "diffusion";
  f.dim = kl_terms;
  f.domain = DomainTag::AllSpace;
  f.evaluate = [model](const Eigen::VectorXd& z) { return model->evaluate(z); };
  return f;
}

namespace {
constexpr double kResistanceFloor = 0.1;

double ladder_nodal_voltage(const Eigen::VectorXd& r, double v0) {
  const int stages = static_cast<int>(r.size()) / 2;
  if (stages < 1 || r.size() % 2 != 0)
    throw std::invalid_argument("resistor ladder: need an even number of resistances");
  for (int j = 0; j < r.size(); ++j)
    if (!(r[j] > 0.0) || !std::isfinite(r[j]))
      throw ModelError("resistor ladder: nonpositive resistance", r);

  const Eigen::VectorXd g = r.cwiseInverse();
  // Node j sits after series resistor 2j; shunt 2j+1 ties it to ground.
  Eigen::VectorXd diag(stages), upper(stages), rhs = Eigen::VectorXd::Zero(stages);
  for (int j = 0; j < stages; ++j) {
    diag[j] = g[2 * j] + g[2 * j + 1] + (j + 1 < stages ? g[2 * j + 2] : 0.0);
    upper[j] = (j + 1 < stages) ? -g[2 * j + 2] : 0.0;
  }
  rhs[0] = g[0] * v0;
  Eigen::VectorXd d = diag, b = rhs;
  for (int j = 1; j < stages; ++j) {
    const double w = upper[j - 1] / d[j - 1]; // symmetric tridiagonal
    d[j] -= w * upper[j - 1];
    b[j] -= w * b[j - 1];
    if (!(std::abs(d[j]) > 0.0)) throw ModelError("resistor ladder: singular network", r);
  }
  Eigen::VectorXd v(stages);
  v[stages - 1] = b[stages - 1] / d[stages - 1];
  for (int j = stages - 2; j >= 0; --j) v[j] = (b[j] - upper[j] * v[j + 1]) / d[j];
  return v[stages - 1];
}
} // namespace

double resistor_ladder_reduction(const Eigen::VectorXd& r, double v0) {
  const int stages = static_cast<int>(r.size()) / 2;
  auto parallel = [](double x, double y) { return x * y / (x + y); };
  // Impedance from node j to ground, collapsing from the far end.
  std::vector<double> load(static_cast<std::size_t>(stages));
  load[static_cast<std::size_t>(stages - 1)] = r[2 * stages - 1];
  for (int j = stages - 2; j >= 0; --j)
    load[static_cast<std::size_t>(j)] =
        parallel(r[2 * j + 1], r[2 * j + 2] + load[static_cast<std::size_t>(j) + 1]);
  double v = v0;
  for (int j = 0; j < stages; ++j)
    v *= load[static_cast<std::size_t>(j)] / (r[2 * j] + load[static_cast<std::size_t>(j)]);
  return v;
}

TargetFunction build_resistor_network(int stages, double v0) {
  if (stages < 1) throw std::invalid_argument("build_resistor_network: stages must be >= 1");
  TargetFunction f;
  f.name = "resistor";
  f.dim = 2 * stages;
  f.domain = DomainTag::Halfspace;
  f.evaluate = [v0](const Eigen::VectorXd& z) {
    const Eigen::VectorXd r = z.array() + kResistanceFloor;
    return ladder_nodal_voltage(r, v0);
  };
  return f;
}

} // namespace xls
