#include "xls/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

namespace xls {

namespace {
constexpr double kDomainTol = 1e-12;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }
} // namespace

PolynomialFamily PolynomialFamily::jacobi(double a, double b) {
  if (!(a > -1.0) || !(b > -1.0))
    throw std::invalid_argument("jacobi: parameters must be > -1");
  return {Kind::Jacobi, a, b};
}

PolynomialFamily PolynomialFamily::hermite() { return {Kind::Hermite, 0.0, 0.0}; }
PolynomialFamily PolynomialFamily::laguerre() { return {Kind::Laguerre, 0.0, 0.0}; }

PolynomialFamily PolynomialFamily::parse(std::string_view name) {
  if (name == "legendre") return legendre();
  if (name == "chebyshev") return chebyshev();
  if (name == "hermite") return hermite();
  if (name == "laguerre") return laguerre();
  if (name.rfind("jacobi(", 0) == 0 && name.back() == ')') {
    const auto body = name.substr(7, name.size() - 8);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("family: jacobi needs two parameters");
    const double a = std::stod(std::string(body.substr(0, comma)));
    const double b = std::stod(std::string(body.substr(comma + 1)));
    return jacobi(a, b);
  }
  throw std::invalid_argument("family: unrecognized name '" + std::string(name) + "'");
}

int PolynomialFamily::homogeneity_order() const {
  switch (kind_) {
    case Kind::Hermite: return 2;
    case Kind::Laguerre: return 1;
    case Kind::Jacobi: break;
  }
  throw std::logic_error("homogeneity_order: only defined for unbounded families");
}

bool PolynomialFamily::in_domain(double z) const {
  if (!std::isfinite(z)) return false;
  switch (kind_) {
    case Kind::Jacobi: return std::abs(z) <= 1.0 + kDomainTol;
    case Kind::Laguerre: return z >= -kDomainTol;
    case Kind::Hermite: return true;
  }
  return false;
}

double PolynomialFamily::weight_density(double z) const {
  switch (kind_) {
    case Kind::Jacobi: {
      if (std::abs(z) > 1.0) return 0.0;
      const double log_norm = (a_ + b_ + 1.0) * std::log(2.0) + log_beta(a_ + 1.0, b_ + 1.0);
      return std::exp(a_ * std::log1p(-z) + b_ * std::log1p(z) - log_norm);
    }
    case Kind::Hermite: return std::exp(-z * z) / std::sqrt(M_PI);
    case Kind::Laguerre: return z < 0.0 ? 0.0 : std::exp(-z);
  }
  return 0.0;
}

std::string PolynomialFamily::str() const {
  switch (kind_) {
    case Kind::Jacobi: {
      if (a_ == 0.0 && b_ == 0.0) return "legendre";
      if (a_ == -0.5 && b_ == -0.5) return "chebyshev";
      return "jacobi(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    }
    case Kind::Hermite: return "hermite";
    case Kind::Laguerre: return "laguerre";
  }
  return "?";
}

bool PolynomialFamily::operator==(const PolynomialFamily& other) const {
  return kind_ == other.kind_ && a_ == other.a_ && b_ == other.b_;
}

std::vector<RecurrencePair> recurrence_coefficients(const PolynomialFamily& family, int n_max) {
  if (n_max < 0) throw std::invalid_argument("recurrence_coefficients: n_max must be >= 0");
  std::vector<RecurrencePair> coeff(static_cast<std::size_t>(n_max) + 1);
  switch (family.kind()) {
    case PolynomialFamily::Kind::Hermite:
      for (int n = 0; n <= n_max; ++n)
        coeff[static_cast<std::size_t>(n)] = {0.0, std::sqrt(n / 2.0)};
      break;
    case PolynomialFamily::Kind::Laguerre:
      for (int n = 0; n <= n_max; ++n)
        coeff[static_cast<std::size_t>(n)] = {2.0 * n + 1.0, static_cast<double>(n)};
      break;
    case PolynomialFamily::Kind::Jacobi: {
      const double a = family.jacobi_a();
      const double b = family.jacobi_b();
      const double ab = a + b;
      for (int n = 0; n <= n_max; ++n) {
        double an, bn;
        if (n == 0) {
          an = (b - a) / (ab + 2.0);
          bn = 1.0;
        } else {
          const double s = 2.0 * n + ab;
          an = (b * b - a * a) / (s * (s + 2.0));
          double bn2;
          if (n == 1) {
            // n = 1 is written separately; the general form is 0/0 when
            // a + b = -1 (e.g. the Chebyshev family).
            bn2 = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
          } else {
            bn2 = 4.0 * n * (n + a) * (n + b) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
          }
          bn = std::sqrt(bn2);
        }
        coeff[static_cast<std::size_t>(n)] = {an, bn};
      }
      coeff[0].b = 1.0; // total mass of the probability weight
      break;
    }
  }
  if (!coeff.empty()) coeff[0].b = 1.0;
  return coeff;
}

Eigen::MatrixXd eval_univariate(const PolynomialFamily& family, int max_degree,
                                const Eigen::VectorXd& points) {
  for (Eigen::Index s = 0; s < points.size(); ++s) {
    if (!family.in_domain(points[s]))
      throw std::domain_error("eval_univariate: point " + std::to_string(points[s]) +
                              " outside domain of " + family.str());
  }
  // One extra coefficient: computing phi_{n+1} consumes b_{n+1}.
  const auto coeff = recurrence_coefficients(family, max_degree + 1);
  Eigen::MatrixXd values(points.size(), max_degree + 1);
  values.col(0).setOnes();
  if (max_degree >= 1)
    values.col(1) = (points.array() - coeff[0].a) / coeff[1].b;
  for (int n = 1; n < max_degree; ++n) {
    const auto sz = static_cast<std::size_t>(n);
    values.col(n + 1) = ((points.array() - coeff[sz].a) * values.col(n).array() -
                         coeff[sz].b * values.col(n - 1).array()) /
                        coeff[sz + 1].b;
  }
  return values;
}

Eigen::MatrixXd scaled_family_eval(const PolynomialFamily& family, int scale_degree,
                                   int max_degree, const Eigen::VectorXd& points) {
  if (family.bounded())
    throw std::logic_error("scaled_family_eval: bounded families have no degree scaling");
  if (scale_degree < 1) throw std::invalid_argument("scaled_family_eval: scale_degree must be >= 1");
  const double t = family.homogeneity_order();
  const double expand = std::pow(static_cast<double>(scale_degree), 1.0 / t);
  const double amplitude = std::pow(static_cast<double>(scale_degree), 1.0 / (2.0 * t));
  return amplitude * eval_univariate(family, max_degree, (points.array() * expand).matrix());
}

TensorBasis::TensorBasis(std::vector<PolynomialFamily> families, MultiIndexSet indices)
    : families_(std::move(families)), indices_(std::move(indices)) {
  if (static_cast<int>(families_.size()) != indices_.dim())
    throw std::invalid_argument("TensorBasis: one family per coordinate required");
}

TensorBasis TensorBasis::isotropic(const PolynomialFamily& family, MultiIndexSet indices) {
  return TensorBasis(std::vector<PolynomialFamily>(static_cast<std::size_t>(indices.dim()), family),
                     std::move(indices));
}

bool TensorBasis::all_bounded() const {
  for (const auto& f : families_)
    if (!f.bounded()) return false;
  return true;
}

bool TensorBasis::all_hermite() const {
  for (const auto& f : families_)
    if (f.kind() != PolynomialFamily::Kind::Hermite) return false;
  return true;
}

bool TensorBasis::all_laguerre() const {
  for (const auto& f : families_)
    if (f.kind() != PolynomialFamily::Kind::Laguerre) return false;
  return true;
}

Eigen::MatrixXd vandermonde(const TensorBasis& basis, const Eigen::MatrixXd& points) {
  const int d = basis.dim();
  if (points.cols() != d)
    throw std::invalid_argument("vandermonde: points have wrong dimension");
  const auto& set = basis.indices();
  const int N = set.size();
  const Eigen::Index S = points.rows();

  // Per-coordinate univariate tables up to the largest degree that appears.
  std::vector<Eigen::MatrixXd> tables(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    int kj = 0;
    for (const auto& alpha : set.indices()) kj = std::max(kj, alpha[static_cast<std::size_t>(j)]);
    tables[static_cast<std::size_t>(j)] =
        eval_univariate(basis.families()[static_cast<std::size_t>(j)], kj, points.col(j));
  }

  Eigen::MatrixXd V(S, N);
  for (int n = 0; n < N; ++n) {
    const auto& alpha = set[n];
    V.col(n) = tables[0].col(alpha[0]);
    for (int j = 1; j < d; ++j)
      V.col(n).array() *= tables[static_cast<std::size_t>(j)].col(alpha[static_cast<std::size_t>(j)]).array();
  }
  return V;
}

Eigen::VectorXd kernel_diagonal(const TensorBasis& basis, const Eigen::MatrixXd& points) {
  return vandermonde(basis, points).rowwise().squaredNorm();
}

Eigen::VectorXd evaluate_expansion(const TensorBasis& basis, const Eigen::VectorXd& coefficients,
                                   const Eigen::MatrixXd& points) {
  if (coefficients.size() != basis.size())
    throw std::invalid_argument("evaluate_expansion: coefficient length mismatch");
  return vandermonde(basis, points) * coefficients;
}

} // namespace xls
