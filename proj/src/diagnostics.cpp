#include "xls/diagnostics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace xls {

namespace {

constexpr double kEntryTol = 1e-10;
constexpr int kMaxNodes = 1 << 16;

// Degrees of a one-dimensional index set, in set order.
std::vector<int> degrees_1d(const MultiIndexSet& set) {
  if (set.dim() != 1) throw std::invalid_argument("diagnostics: one-dimensional index set required");
  std::vector<int> deg(static_cast<std::size_t>(set.size()));
  for (int n = 0; n < set.size(); ++n) deg[static_cast<std::size_t>(n)] = set[n][0];
  return deg;
}

// Columns of the full univariate table selected by the set's degrees.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& table, const std::vector<int>& degrees) {
  Eigen::MatrixXd out(table.rows(), static_cast<Eigen::Index>(degrees.size()));
  for (std::size_t n = 0; n < degrees.size(); ++n)
    out.col(static_cast<Eigen::Index>(n)) = table.col(degrees[n]);
  return out;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& phi, const Eigen::ArrayXd& point_weights) {
  Eigen::MatrixXd scaled = phi;
  scaled.array().colwise() *= point_weights;
  Eigen::MatrixXd r = phi.transpose() * scaled;
  return 0.5 * (r + r.transpose());
}

DiscrepancyReport finalize_report(Eigen::MatrixXd r, bool converged) {
  DiscrepancyReport report;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
  report.lambda_min = eig.eigenvalues().minCoeff();
  report.lambda_max = eig.eigenvalues().maxCoeff();
  report.kappa = report.lambda_max / report.lambda_min;
  report.frobenius_dist_to_identity =
      (r - Eigen::MatrixXd::Identity(r.rows(), r.cols())).norm();
  report.r_matrix = std::move(r);
  report.quadrature_converged = converged;
  return report;
}

// Node-doubling driver: assemble(n_nodes) until entrywise movement falls
// below kEntryTol or the node budget runs out.
DiscrepancyReport converge_r(const std::function<Eigen::MatrixXd(int)>& assemble, int start_nodes) {
  Eigen::MatrixXd previous = assemble(start_nodes);
  for (int m = 2 * start_nodes; m <= kMaxNodes; m *= 2) {
    Eigen::MatrixXd current = assemble(m);
    const double change = (current - previous).cwiseAbs().maxCoeff();
    if (change < kEntryTol) return finalize_report(std::move(current), true);
    previous = std::move(current);
  }
  return finalize_report(std::move(previous), false);
}

} // namespace

double stability_factor(const PolynomialFamily& family, int degree) {
  if (!family.bounded())
    throw std::invalid_argument("stability_factor: unbounded families have an unbounded kernel");
  if (degree < 0) throw std::invalid_argument("stability_factor: degree must be >= 0");
  constexpr int kGrid = 10000;
  Eigen::VectorXd grid(kGrid + 1);
  for (int j = 0; j <= kGrid; ++j) grid[j] = std::cos(M_PI * j / kGrid);
  const Eigen::MatrixXd table = eval_univariate(family, degree, grid);
  const double max_k = table.rowwise().squaredNorm().maxCoeff();
  return max_k / static_cast<double>(degree + 1);
}

DiscrepancyReport r_matrix_bounded(const PolynomialFamily& family, const MultiIndexSet& set) {
  if (!family.bounded()) throw std::invalid_argument("r_matrix_bounded: bounded family required");
  const auto degrees = degrees_1d(set);
  const int max_deg = *std::max_element(degrees.begin(), degrees.end());
  const double n_over = static_cast<double>(set.size());

  auto assemble = [&](int m) {
    // Arcsine-Gauss rule: nodes cos((2j-1)pi/2m), uniform weights 1/m.
    Eigen::VectorXd nodes(m);
    for (int j = 0; j < m; ++j) nodes[j] = std::cos((2.0 * j + 1.0) * M_PI / (2.0 * m));
    const Eigen::MatrixXd table = eval_univariate(family, max_deg, nodes);
    const Eigen::MatrixXd phi = select_columns(table, degrees);
    const Eigen::ArrayXd kernel = phi.rowwise().squaredNorm().array();
    const Eigen::ArrayXd pw = (n_over / kernel) / static_cast<double>(m);
    return weighted_gram(phi, pw);
  };
  const int start = std::max(64, 2 * (max_deg + 1));
  return converge_r(assemble, start);
}

DiscrepancyReport r_matrix_unbounded(const PolynomialFamily& family, const MultiIndexSet& set) {
  if (family.bounded()) throw std::invalid_argument("r_matrix_unbounded: unbounded family required");
  const auto degrees = degrees_1d(set);
  const int max_deg = *std::max_element(degrees.begin(), degrees.end());
  const int k = set.max_degree();
  if (k < 1) throw std::invalid_argument("r_matrix_unbounded: max degree must be >= 1");
  const double n_over = static_cast<double>(set.size());

  // On the unit support the integrand is phi^(k)_a phi^(k)_b (N/K^(k)) v,
  // with v the conjectured weighted equilibrium density. Its endpoint
  // exponents match a Jacobi family exactly, so the probability Gauss rule
  // of that family integrates phi phi N/K directly:
  //   Hermite : v(y) = (1/pi) sqrt(2 - y^2)          on [-sqrt2, sqrt2]
  //   Laguerre: v(y) = (1/2pi) sqrt((4 - y)/y)       on [0, 4]
  const bool is_hermite = family.kind() == PolynomialFamily::Kind::Hermite;
  const PolynomialFamily rule_family =
      is_hermite ? PolynomialFamily::jacobi(0.5, 0.5) : PolynomialFamily::jacobi(0.5, -0.5);

  auto assemble = [&](int m) {
    const QuadratureRule rule = gauss_rule(rule_family, m);
    Eigen::VectorXd nodes(m);
    for (int j = 0; j < m; ++j)
      nodes[j] = is_hermite ? std::sqrt(2.0) * rule.nodes[j] : 2.0 * (1.0 + rule.nodes[j]);
    const Eigen::MatrixXd table = scaled_family_eval(family, k, max_deg, nodes);
    const Eigen::MatrixXd phi = select_columns(table, degrees);
    const Eigen::ArrayXd kernel = phi.rowwise().squaredNorm().array();
    const Eigen::ArrayXd pw = rule.weights.array() * (n_over / kernel);
    return weighted_gram(phi, pw);
  };
  const int start = std::max(64, 2 * (max_deg + 1));
  return converge_r(assemble, start);
}

double PiecewisePolynomial::operator()(double z) const {
  std::size_t piece = 0;
  while (piece < breaks.size() && z > breaks[piece]) ++piece;
  const auto& c = pieces[piece];
  double value = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) value = value * z + c[i];
  return value;
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  PiecewisePolynomial out;
  out.breaks = breaks;
  out.pieces.resize(pieces.size());
  double left = -1.0;
  double running = 0.0; // F at the left edge of the current piece
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& c = pieces[p];
    std::vector<double> ac(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) ac[i + 1] = c[i] / static_cast<double>(i + 1);
    // Fix the constant so F is continuous (F(-1) = 0 on the first piece).
    double at_left = 0.0;
    for (std::size_t i = ac.size(); i-- > 0;) at_left = at_left * left + ac[i];
    ac[0] = running - at_left;
    out.pieces[p] = std::move(ac);
    if (p < breaks.size()) {
      const double right = breaks[p];
      double at_right = 0.0;
      for (std::size_t i = out.pieces[p].size(); i-- > 0;) at_right = at_right * right + out.pieces[p][i];
      running = at_right;
      left = right;
    }
  }
  return out;
}

PiecewisePolynomial test_function_fq_polynomial(int q) {
  if (q < 0 || q > 3) throw std::invalid_argument("test_function_fq: q must be in 0..3");
  PiecewisePolynomial f;
  f.breaks = {0.5};
  f.pieces = {{1.0}, {-1.0}};
  for (int i = 0; i < q; ++i) f = f.antiderivative();
  return f;
}

Function1d test_function_fq(int q) {
  auto poly = test_function_fq_polynomial(q);
  Function1d f;
  f.breakpoints = poly.breaks;
  f.eval = [poly = std::move(poly)](double z) { return poly(z); };
  return f;
}

namespace {

struct PanelLayout {
  std::vector<double> edges; // -1 = e_0 < e_1 < ... < e_m = 1
};

PanelLayout make_panels(const std::vector<double>& breakpoints) {
  PanelLayout layout;
  layout.edges.push_back(-1.0);
  for (double b : breakpoints) {
    if (b <= -1.0 || b >= 1.0) throw std::invalid_argument("breakpoints must be interior to [-1,1]");
    layout.edges.push_back(b);
  }
  layout.edges.push_back(1.0);
  if (!std::is_sorted(layout.edges.begin(), layout.edges.end()))
    throw std::invalid_argument("breakpoints must be ascending");
  return layout;
}

// Integrals of f(z) * phi_n(z) * rho(z) dz over [-1,1] for all degrees in
// `degrees`, plus the f^2 moment, against either the orthogonality weight
// (rho = w) or the Christoffel-weighted arcsine density (rho = (N/K) v).
struct WeightedMoments {
  Eigen::VectorXd coeff; // one per requested degree
  double f_squared = 0.0;
};

enum class MomentWeight { Orthogonality, ChristoffelArcsine };

WeightedMoments compute_moments(const Function1d& f, const PolynomialFamily& family,
                                const std::vector<int>& degrees, MomentWeight which, int nodes_per_panel) {
  const int max_deg = *std::max_element(degrees.begin(), degrees.end());
  const double a = family.jacobi_a();
  const double b = family.jacobi_b();
  const double log_norm = (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                          std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
  const double w_norm = std::exp(-log_norm);
  const double n_over = static_cast<double>(degrees.size());

  const PanelLayout layout = make_panels(f.breakpoints);
  WeightedMoments moments;
  moments.coeff = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(degrees.size()));

  for (std::size_t p = 0; p + 1 < layout.edges.size(); ++p) {
    const double lo = layout.edges[p];
    const double hi = layout.edges[p + 1];
    const bool at_left_end = (lo == -1.0);
    const bool at_right_end = (hi == 1.0);
    // Endpoint exponents absorbed by the panel rule; anything not absorbed
    // stays in the smooth factor below.
    double el = 0.0, er = 0.0;
    if (which == MomentWeight::Orthogonality) {
      el = at_left_end ? b : 0.0;
      er = at_right_end ? a : 0.0;
    } else {
      el = at_left_end ? -0.5 : 0.0;
      er = at_right_end ? -0.5 : 0.0;
    }

    const QuadratureRule rule = gauss_jacobi_raw(er, el, nodes_per_panel);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Eigen::VectorXd nodes(rule.size());
    for (int j = 0; j < rule.size(); ++j) nodes[j] = mid + half * rule.nodes[j];
    const double jac = std::pow(half, 1.0 + el + er);

    const Eigen::MatrixXd table = eval_univariate(family, max_deg, nodes);
    const Eigen::MatrixXd phi = select_columns(table, degrees);

    Eigen::ArrayXd smooth(rule.size());
    for (int j = 0; j < rule.size(); ++j) {
      const double z = nodes[j];
      double rho;
      if (which == MomentWeight::Orthogonality) {
        rho = w_norm;
        if (!at_right_end) rho *= std::pow(1.0 - z, a);
        if (!at_left_end) rho *= std::pow(1.0 + z, b);
      } else {
        rho = 1.0 / M_PI;
        if (!at_right_end) rho /= std::sqrt(1.0 - z);
        if (!at_left_end) rho /= std::sqrt(1.0 + z);
        rho *= n_over / phi.row(j).squaredNorm();
      }
      smooth[j] = rho * f.eval(z);
    }
    const Eigen::ArrayXd pw = rule.weights.array() * smooth * jac;
    moments.coeff += phi.transpose() * pw.matrix();
    for (int j = 0; j < rule.size(); ++j) moments.f_squared += pw[j] * f.eval(nodes[j]);
  }
  return moments;
}

} // namespace

ProjectionDiscrepancy projection_discrepancy(const Function1d& f, const PolynomialFamily& family,
                                             const MultiIndexSet& set) {
  if (!family.bounded())
    throw std::invalid_argument("projection_discrepancy: bounded family required");
  const auto degrees = degrees_1d(set);

  const DiscrepancyReport r_report = r_matrix_bounded(family, set);

  // Node-doubling across both weighted moment computations.
  auto both = [&](int m) {
    return std::pair{compute_moments(f, family, degrees, MomentWeight::Orthogonality, m),
                     compute_moments(f, family, degrees, MomentWeight::ChristoffelArcsine, m)};
  };
  auto [w_prev, t_prev] = both(64);
  bool converged = false;
  for (int m = 128; m <= kMaxNodes; m *= 2) {
    auto [w_cur, t_cur] = both(m);
    const double change =
        std::max({(w_cur.coeff - w_prev.coeff).cwiseAbs().maxCoeff(),
                  (t_cur.coeff - t_prev.coeff).cwiseAbs().maxCoeff(),
                  std::abs(w_cur.f_squared - w_prev.f_squared),
                  std::abs(t_cur.f_squared - t_prev.f_squared)});
    w_prev = std::move(w_cur);
    t_prev = std::move(t_cur);
    if (change < kEntryTol) {
      converged = true;
      break;
    }
  }

  const Eigen::VectorXd& c = w_prev.coeff; // w-projection coefficients
  const Eigen::VectorXd& h = t_prev.coeff; // w~ moments
  const Eigen::VectorXd d = r_report.r_matrix.ldlt().solve(h);

  ProjectionDiscrepancy result;
  result.quadrature_converged = converged && r_report.quadrature_converged;
  result.data_discrepancy = (d - c).norm();

  const double g_w = std::max(0.0, w_prev.f_squared - c.squaredNorm());
  const double g_t = std::max(0.0, t_prev.f_squared - 2.0 * c.dot(h) +
                                       c.dot(r_report.r_matrix * c));
  if (g_w <= 1e-12 * std::max(w_prev.f_squared, 1e-300)) {
    result.delta_defined = false;
    result.delta = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.delta_defined = true;
  result.delta = g_t / (r_report.lambda_min * g_w) +
                 4.0 * r_report.kappa * r_report.kappa *
                     (result.data_discrepancy * result.data_discrepancy) / g_w;
  return result;
}

} // namespace xls
