#include "xls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace xls {

namespace detail {

void tridiag_eigen_first_row(std::vector<double>& diag, std::vector<double>& sub,
                             std::vector<double>& first_row) {
  const int n = static_cast<int>(diag.size());
  first_row.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return;
  first_row[0] = 1.0;
  if (n == 1) return;
  if (static_cast<int>(sub.size()) < n - 1)
    throw std::invalid_argument("tridiag_eigen_first_row: subdiagonal too short");

  // Implicit-shift QL (imtql2 lineage), accumulating only the first row of
  // the eigenvector matrix; that row squared gives the Gauss weights.
  std::vector<double> e(sub.begin(), sub.begin() + (n - 1));
  e.push_back(0.0);
  auto& d = diag;
  auto& z = first_row;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiag_eigen_first_row: QL failed to converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

} // namespace detail

namespace {

QuadratureRule rule_from_recurrence(const std::vector<RecurrencePair>& coeff, int n_nodes,
                                    double mass, std::string target) {
  std::vector<double> d(static_cast<std::size_t>(n_nodes));
  std::vector<double> e(static_cast<std::size_t>(n_nodes > 0 ? n_nodes - 1 : 0));
  for (int i = 0; i < n_nodes; ++i) d[static_cast<std::size_t>(i)] = coeff[static_cast<std::size_t>(i)].a;
  for (int i = 0; i + 1 < n_nodes; ++i) e[static_cast<std::size_t>(i)] = coeff[static_cast<std::size_t>(i) + 1].b;

  std::vector<double> first;
  detail::tridiag_eigen_first_row(d, e, first);

  std::vector<int> order(static_cast<std::size_t>(n_nodes));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[static_cast<std::size_t>(i)] < d[static_cast<std::size_t>(j)]; });

  QuadratureRule rule;
  rule.nodes.resize(n_nodes);
  rule.weights.resize(n_nodes);
  rule.target_measure = std::move(target);
  for (int i = 0; i < n_nodes; ++i) {
    const int j = order[static_cast<std::size_t>(i)];
    rule.nodes[i] = d[static_cast<std::size_t>(j)];
    rule.weights[i] = mass * first[static_cast<std::size_t>(j)] * first[static_cast<std::size_t>(j)];
  }
  return rule;
}

} // namespace

QuadratureRule gauss_rule(const PolynomialFamily& family, int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("gauss_rule: need at least one node");
  const auto coeff = recurrence_coefficients(family, n_nodes);
  return rule_from_recurrence(coeff, n_nodes, 1.0, family.str());
}

QuadratureRule gauss_jacobi_raw(double a, double b, int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("gauss_jacobi_raw: need at least one node");
  const auto family = PolynomialFamily::jacobi(a, b);
  const auto coeff = recurrence_coefficients(family, n_nodes);
  const double log_mass =
      (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
  return rule_from_recurrence(coeff, n_nodes, std::exp(log_mass),
                              "jacobi_raw(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

double integrate_panel(const std::function<double(double)>& g, double lo, double hi,
                       double expo_left, double expo_right, int n_nodes) {
  if (!(hi > lo)) throw std::invalid_argument("integrate_panel: empty interval");
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  // (x - lo) maps to half*(1+xi), (hi - x) to half*(1-xi); the rule's raw
  // weight (1-xi)^er (1+xi)^el absorbs both endpoint factors.
  const QuadratureRule rule = gauss_jacobi_raw(expo_right, expo_left, n_nodes);
  double acc = 0.0;
  for (int j = 0; j < rule.size(); ++j) acc += rule.weights[j] * g(mid + half * rule.nodes[j]);
  return acc * std::pow(half, 1.0 + expo_left + expo_right);
}

} // namespace xls
