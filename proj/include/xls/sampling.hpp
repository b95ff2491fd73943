#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "xls/orthopoly.hpp"

namespace xls {

// The generating distribution of an ensemble. Orthogonality draws from the
// basis's own product density; the Equilibrium* rules draw from the
// (weighted) equilibrium measure of the corresponding domain. The unbounded
// rules carry the degree used for support expansion (by k^(1/t)).
struct SamplingRule {
  enum class Kind {
    Orthogonality,
    EquilibriumCube,
    EquilibriumBall,
    EquilibriumSimplex,
    EquilibriumHermite,
    EquilibriumLaguerre
  };

  Kind kind = Kind::Orthogonality;
  int dim = 1;
  int scale_degree = 0; // unbounded rules only; >= 1

  std::string tag() const; // stable stream/serialization tag
};

struct SampleEnsemble {
  Eigen::MatrixXd points; // S x d
  SamplingRule rule;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }

  // CSV with a "# rule=... seed=... S=... d=..." header line.
  void write_csv(std::ostream& out) const;
};

// S iid draws from the orthogonality density of the basis's families.
SampleEnsemble sample_orthogonality(const TensorBasis& basis, int count, std::uint64_t seed);

// Equilibrium measure of [-1,1]^d: iid arcsine coordinates z_j = cos(pi U_j).
SampleEnsemble sample_equilibrium_cube(int dim, int count, std::uint64_t seed);

// Equilibrium measure of the unit ball: density ~ (1 - |z|^2)^(-1/2).
SampleEnsemble sample_equilibrium_ball(int dim, int count, std::uint64_t seed);

// Equilibrium measure of the unit simplex:
// density ~ ((1 - sum z_j) / prod z_j)^(1/2).
SampleEnsemble sample_equilibrium_simplex(int dim, int count, std::uint64_t seed);

// Gaussian-weight equilibrium measure, density ~ (2 - |z|^2)^(d/2) on
// sqrt(2) B^d, expanded by k^(1/2).
SampleEnsemble sample_equilibrium_hermite(int dim, int scale_degree, int count, std::uint64_t seed);

// Exponential-weight equilibrium measure, density
// ~ (4 - sum z_j)^(d/2) prod z_j^(-1/2) on 4 T^d, expanded by k.
SampleEnsemble sample_equilibrium_laguerre(int dim, int scale_degree, int count, std::uint64_t seed);

// Dispatch on rule.kind for the equilibrium rules (Orthogonality needs a
// basis; use sample_orthogonality).
SampleEnsemble sample_equilibrium(const SamplingRule& rule, int count, std::uint64_t seed);

} // namespace xls
