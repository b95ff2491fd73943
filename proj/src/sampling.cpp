#include "xls/sampling.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "xls/rng.hpp"

namespace xls {

std::string SamplingRule::tag() const {
  switch (kind) {
    case Kind::Orthogonality: return "orthogonality/d=" + std::to_string(dim);
    case Kind::EquilibriumCube: return "eq-cube/d=" + std::to_string(dim);
    case Kind::EquilibriumBall: return "eq-ball/d=" + std::to_string(dim);
    case Kind::EquilibriumSimplex: return "eq-simplex/d=" + std::to_string(dim);
    case Kind::EquilibriumHermite:
      return "eq-hermite/d=" + std::to_string(dim) + "/k=" + std::to_string(scale_degree);
    case Kind::EquilibriumLaguerre:
      return "eq-laguerre/d=" + std::to_string(dim) + "/k=" + std::to_string(scale_degree);
  }
  return "?";
}

void SampleEnsemble::write_csv(std::ostream& out) const {
  out << "# rule=" << rule.tag() << " seed=" << seed << " S=" << count() << " d=" << dim() << "\n";
  for (int s = 0; s < count(); ++s) {
    for (int j = 0; j < dim(); ++j) {
      if (j) out << ',';
      out << points(s, j);
    }
    out << "\n";
  }
}

namespace {

Rng make_stream(const SamplingRule& rule, std::uint64_t seed) {
  return Rng(derive_seed(seed, rule.tag()));
}

SampleEnsemble make_ensemble(const SamplingRule& rule, int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample: count must be >= 0");
  if (rule.dim < 1) throw std::invalid_argument("sample: dim must be >= 1");
  SampleEnsemble ensemble;
  ensemble.rule = rule;
  ensemble.seed = seed;
  ensemble.points.resize(count, rule.dim);
  return ensemble;
}

} // namespace

SampleEnsemble sample_orthogonality(const TensorBasis& basis, int count, std::uint64_t seed) {
  SamplingRule rule{SamplingRule::Kind::Orthogonality, basis.dim(), 0};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  const auto& families = basis.families();
  for (int s = 0; s < count; ++s) {
    for (int j = 0; j < basis.dim(); ++j) {
      const auto& fam = families[static_cast<std::size_t>(j)];
      double z;
      switch (fam.kind()) {
        case PolynomialFamily::Kind::Jacobi:
          // (1-z)^a (1+z)^b on [-1,1] maps to Beta(b+1, a+1) on [0,1].
          z = 2.0 * rng.beta(fam.jacobi_b() + 1.0, fam.jacobi_a() + 1.0) - 1.0;
          break;
        case PolynomialFamily::Kind::Hermite:
          // density exp(-z^2)/sqrt(pi): Gaussian with variance 1/2
          z = rng.normal() / std::sqrt(2.0);
          break;
        case PolynomialFamily::Kind::Laguerre:
          z = rng.exponential();
          break;
        default:
          throw std::logic_error("sample_orthogonality: no generator for family");
      }
      ensemble.points(s, j) = z;
    }
  }
  return ensemble;
}

SampleEnsemble sample_equilibrium_cube(int dim, int count, std::uint64_t seed) {
  SamplingRule rule{SamplingRule::Kind::EquilibriumCube, dim, 0};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  for (int s = 0; s < count; ++s)
    for (int j = 0; j < dim; ++j) ensemble.points(s, j) = std::cos(M_PI * rng.uniform01());
  return ensemble;
}

SampleEnsemble sample_equilibrium_ball(int dim, int count, std::uint64_t seed) {
  SamplingRule rule{SamplingRule::Kind::EquilibriumBall, dim, 0};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  Eigen::VectorXd g(dim);
  for (int s = 0; s < count; ++s) {
    // Uniform direction; squared radius Beta(d/2, 1/2) gives the
    // (1-r^2)^(-1/2) radial profile.
    double norm2;
    do {
      for (int j = 0; j < dim; ++j) g[j] = rng.normal();
      norm2 = g.squaredNorm();
    } while (norm2 == 0.0);
    const double radius = std::sqrt(rng.beta(0.5 * dim, 0.5));
    ensemble.points.row(s) = (radius / std::sqrt(norm2)) * g.transpose();
  }
  return ensemble;
}

SampleEnsemble sample_equilibrium_simplex(int dim, int count, std::uint64_t seed) {
  SamplingRule rule{SamplingRule::Kind::EquilibriumSimplex, dim, 0};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  std::vector<double> alpha(static_cast<std::size_t>(dim) + 1, 0.5);
  alpha.back() = 1.5;
  for (int s = 0; s < count; ++s) {
    const auto w = rng.dirichlet(alpha);
    for (int j = 0; j < dim; ++j) ensemble.points(s, j) = w[static_cast<std::size_t>(j)];
  }
  return ensemble;
}

SampleEnsemble sample_equilibrium_hermite(int dim, int scale_degree, int count, std::uint64_t seed) {
  if (scale_degree < 1)
    throw std::invalid_argument("sample_equilibrium_hermite: scale_degree must be >= 1");
  SamplingRule rule{SamplingRule::Kind::EquilibriumHermite, dim, scale_degree};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  const double expand = std::sqrt(static_cast<double>(scale_degree)); // k^(1/t), t = 2
  Eigen::VectorXd g(dim);
  for (int s = 0; s < count; ++s) {
    double norm2;
    do {
      for (int j = 0; j < dim; ++j) g[j] = rng.normal();
      norm2 = g.squaredNorm();
    } while (norm2 == 0.0);
    const double p = rng.beta(0.5 * dim, 0.5 * dim + 1.0);
    const double radius = std::sqrt(2.0 * p);
    ensemble.points.row(s) = (expand * radius / std::sqrt(norm2)) * g.transpose();
  }
  return ensemble;
}

SampleEnsemble sample_equilibrium_laguerre(int dim, int scale_degree, int count, std::uint64_t seed) {
  if (scale_degree < 1)
    throw std::invalid_argument("sample_equilibrium_laguerre: scale_degree must be >= 1");
  SamplingRule rule{SamplingRule::Kind::EquilibriumLaguerre, dim, scale_degree};
  SampleEnsemble ensemble = make_ensemble(rule, count, seed);
  Rng rng = make_stream(rule, seed);
  const double expand = static_cast<double>(scale_degree); // k^(1/t), t = 1
  std::vector<double> alpha(static_cast<std::size_t>(dim) + 1, 0.5);
  alpha.back() = 0.5 * dim + 1.0;
  for (int s = 0; s < count; ++s) {
    const auto w = rng.dirichlet(alpha);
    for (int j = 0; j < dim; ++j)
      ensemble.points(s, j) = expand * 4.0 * w[static_cast<std::size_t>(j)];
  }
  return ensemble;
}

SampleEnsemble sample_equilibrium(const SamplingRule& rule, int count, std::uint64_t seed) {
  switch (rule.kind) {
    case SamplingRule::Kind::EquilibriumCube: return sample_equilibrium_cube(rule.dim, count, seed);
    case SamplingRule::Kind::EquilibriumBall: return sample_equilibrium_ball(rule.dim, count, seed);
    case SamplingRule::Kind::EquilibriumSimplex:
      return sample_equilibrium_simplex(rule.dim, count, seed);
    case SamplingRule::Kind::EquilibriumHermite:
      return sample_equilibrium_hermite(rule.dim, rule.scale_degree, count, seed);
    case SamplingRule::Kind::EquilibriumLaguerre:
      return sample_equilibrium_laguerre(rule.dim, rule.scale_degree, count, seed);
    case SamplingRule::Kind::Orthogonality: break;
  }
  throw std::invalid_argument("sample_equilibrium: rule requires a basis (use sample_orthogonality)");
}

} // namespace xls
