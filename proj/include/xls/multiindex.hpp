#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace xls {

// Exponent vector alpha in N_0^d.
using MultiIndex = std::vector<int>;

// |alpha| = alpha_1 + ... + alpha_d.
int total_order(const MultiIndex& alpha);

// Positive rational exponent for lp-ball membership. Numerator and
// denominator are kept small (<= 8) so power sums stay in integer range.
struct Rational {
  long long num = 1;
  long long den = 1;

  double value() const;
  std::string str() const;
  static Rational parse(std::string_view text); // "2/5", "1", "0.5" not accepted
};

// Decides sum_i alpha_i^p <=> k^p exactly for rational p = u/v. Each power
// alpha_i^u is split as s^v * t with t v-th-power free; grouping by t makes
// equality decidable in integer arithmetic, and strict inequalities are
// resolved in extended precision. Returns -1, 0, +1.
int compare_lp_power_sum(const MultiIndex& alpha, const Rational& p, int k);

class MultiIndexSet {
public:
  enum class Kind { TotalDegree, LpBall, Explicit };

  // All alpha with |alpha| <= degree, graded-lexicographic order.
  static MultiIndexSet total_degree(int dim, int degree);
  // All alpha with (sum alpha_i^p)^(1/p) <= degree; p = 1 reproduces the
  // total-degree set.
  static MultiIndexSet lp_ball(int dim, Rational p, int degree);
  // User-supplied set; order is preserved as given. Sets without the zero
  // index are accepted but flagged (see zero_index_missing) because the
  // Christoffel weights need phi_0 for positivity of the kernel diagonal.
  static MultiIndexSet explicit_set(int dim, std::vector<MultiIndex> indices);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(indices_.size()); } // N
  Kind kind() const { return kind_; }
  int degree_parameter() const { return degree_; }
  const Rational& p() const { return p_; }

  const MultiIndex& operator[](int n) const { return indices_[static_cast<std::size_t>(n)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  int max_degree() const; // max |alpha| over the set
  bool contains(const MultiIndex& alpha) const;
  bool zero_index_missing() const { return zero_missing_; }

  // Ordering predicate: by |alpha|, then lexicographic with the larger
  // leading entry first. This matches the column order used everywhere.
  static bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

  // Text form: header "d=<d> N=<N> kind=<kind>", then one index per line,
  // entries space-separated. Reading back preserves the order exactly.
  void write(std::ostream& out) const;
  static MultiIndexSet read(std::istream& in);
  std::string kind_string() const;

private:
  MultiIndexSet() = default;

  int dim_ = 1;
  Kind kind_ = Kind::Explicit;
  int degree_ = 0;
  Rational p_{1, 1};
  bool zero_missing_ = false;
  std::vector<MultiIndex> indices_;
};

} // namespace xls
