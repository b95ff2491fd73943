#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace xls {

enum class DomainTag { Cube, Halfspace, AllSpace };

// A deterministic scalar response surface used as a regression target.
struct TargetFunction {
  std::string name;
  int dim = 1;
  DomainTag domain = DomainTag::Cube;
  std::function<double(const Eigen::VectorXd&)> evaluate;
};

// Raised when a model cannot be evaluated at a parameter value (e.g. a
// diffusivity draw that loses positivity); carries the offending input.
class ModelError : public std::runtime_error {
public:
  ModelError(std::string message, Eigen::VectorXd z)
      : std::runtime_error(std::move(message)), offending_input(std::move(z)) {}
  Eigen::VectorXd offending_input;
};

// z -> exp(-sum z_i^2)
TargetFunction f_gaussian_bump(int dim);

// z -> exp(-sum z_i)
TargetFunction f_exponential(int dim);

// One-dimensional heterogeneous diffusion with a truncated KL diffusivity:
//   -(a(x,z) u')' = 1 on (0,1), u(0) = u(1) = 0,
//   a(x,z) = abar + sigma_a * sum_k sqrt(lambda_k) phi_k(x) z_k,
// where (lambda_k, phi_k) are eigenpairs of exp(-(x1-x2)^2 / l_c^2) on the
// spatial grid. The response is u(1/3, z).
class DiffusionModel {
public:
  DiffusionModel(int kl_terms, double abar, double sigma_a, double l_c, int n_x);

  double evaluate(const Eigen::VectorXd& z) const; // u(1/3, z)
  Eigen::VectorXd solve_profile(const Eigen::VectorXd& z) const; // full grid solution

  const Eigen::VectorXd& kl_eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& kl_eigenfunctions() const { return eigenfunctions_; } // n_x x kl_terms
  double covariance_trace() const { return trace_; }
  int grid_size() const { return static_cast<int>(grid_.size()); }
  const Eigen::VectorXd& grid() const { return grid_; }

  void write_kl_csv(std::ostream& out) const;

private:
  Eigen::VectorXd diffusivity(const Eigen::VectorXd& z) const;

  int kl_terms_;
  double abar_;
  double sigma_a_;
  Eigen::VectorXd grid_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenfunctions_;
  double trace_ = 0.0;
};

TargetFunction build_diffusion(int kl_terms = 2, double abar = 1.0, double sigma_a = 0.1,
                               double l_c = 1.0, int n_x = 1025);

// Ladder resistor network with `stages` sections; each section is one
// series resistor followed by one shunt resistor to ground, so d = 2*stages
// uncertain resistances. The source drives the first series resistor with
// potential v0; the response is the voltage across the final shunt.
// Exponential inputs enter as R_j = floor + z_j with floor 0.1 to keep the
// network away from singular all-zero draws.
TargetFunction build_resistor_network(int stages = 3, double v0 = 1.0);

// The same ladder solved by series-parallel reduction instead of nodal
// analysis; independent check used by the tests.
double resistor_ladder_reduction(const Eigen::VectorXd& resistances, double v0);

} // namespace xls
