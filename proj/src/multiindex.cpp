#include "xls/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xls {

int total_order(const MultiIndex& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

double Rational::value() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text) {
  Rational r;
  const auto slash = text.find('/');
  auto to_ll = [](std::string_view s) {
    std::size_t pos = 0;
    const long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("Rational: trailing characters");
    return v;
  };
  if (slash == std::string_view::npos) {
    r.num = to_ll(text);
    r.den = 1;
  } else {
    r.num = to_ll(text.substr(0, slash));
    r.den = to_ll(text.substr(slash + 1));
  }
  if (r.num <= 0 || r.den <= 0) throw std::invalid_argument("Rational: exponent must be positive");
  const long long g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  if (r.num > 8 || r.den > 8) throw std::invalid_argument("Rational: numerator/denominator limited to 8");
  return r;
}

namespace {

// alpha^u written as s^v * t with t free of v-th powers. Small inputs only;
// factorization is trial division.
struct RadicalTerm {
  long long outer = 1; // s
  long long inner = 1; // t
};

RadicalTerm decompose_power(long long base, long long u, long long v) {
  RadicalTerm term;
  if (base == 0) return {0, 1};
  if (base == 1) return {1, 1};
  long long n = base;
  for (long long f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    long long e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    e *= u;
    for (long long i = 0; i < e / v; ++i) term.outer *= f;
    for (long long i = 0; i < e % v; ++i) term.inner *= f;
  }
  if (n > 1) {
    const long long e = u;
    for (long long i = 0; i < e / v; ++i) term.outer *= n;
    for (long long i = 0; i < e % v; ++i) term.inner *= n;
  }
  return term;
}

} // namespace

int compare_lp_power_sum(const MultiIndex& alpha, const Rational& p, int k) {
  const long long u = p.num;
  const long long v = p.den;
  // Signed coefficients of the radicals t^(1/v): LHS terms positive, the
  // bound k^u negative. An empty map after cancellation means equality.
  std::map<long long, long long> coeff;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    if (a == 0) continue;
    const RadicalTerm t = decompose_power(a, u, v);
    coeff[t.inner] += t.outer;
  }
  {
    const RadicalTerm t = decompose_power(k, u, v);
    coeff[t.inner] -= t.outer;
  }
  long double sum = 0.0L;
  long double scale = 0.0L;
  bool all_zero = true;
  for (const auto& [inner, c] : coeff) {
    if (c == 0) continue;
    all_zero = false;
    const long double radical = powl(static_cast<long double>(inner), 1.0L / static_cast<long double>(v));
    sum += static_cast<long double>(c) * radical;
    scale += fabsl(static_cast<long double>(c)) * radical;
  }
  if (all_zero) return 0;
  // Distinct v-th-power-free radicals are linearly independent over the
  // rationals, so a nonzero coefficient vector means a nonzero sum; the sign
  // just has to be resolved numerically. Guard against the (never observed)
  // case of a sum too small for long double to decide.
  if (fabsl(sum) <= scale * 1e-15L)
    throw std::runtime_error("compare_lp_power_sum: cannot resolve sign at this precision");
  return sum > 0 ? 1 : -1;
}

bool MultiIndexSet::graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_order(a);
  const int db = total_order(b);
  if (da != db) return da < db;
  // Within a degree block the lexicographically larger index comes first:
  // (2,0), (1,1), (0,2).
  return a > b;
}

MultiIndexSet MultiIndexSet::total_degree(int dim, int degree) {
  if (dim < 1) throw std::invalid_argument("total_degree: dim must be >= 1");
  if (degree < 0) throw std::invalid_argument("total_degree: degree must be >= 0");
  MultiIndexSet set;
  set.dim_ = dim;
  set.kind_ = Kind::TotalDegree;
  set.degree_ = degree;

  MultiIndex alpha(static_cast<std::size_t>(dim), 0);
  // Depth-first enumeration with the degree budget.
  auto recurse = [&](auto&& self, int coord, int budget) -> void {
    if (coord == dim) {
      set.indices_.push_back(alpha);
      return;
    }
    for (int a = 0; a <= budget; ++a) {
      alpha[static_cast<std::size_t>(coord)] = a;
      self(self, coord + 1, budget - a);
    }
    alpha[static_cast<std::size_t>(coord)] = 0;
  };
  recurse(recurse, 0, degree);
  std::sort(set.indices_.begin(), set.indices_.end(), graded_lex_less);
  return set;
}

MultiIndexSet MultiIndexSet::lp_ball(int dim, Rational p, int degree) {
  if (dim < 1) throw std::invalid_argument("lp_ball: dim must be >= 1");
  if (degree < 0) throw std::invalid_argument("lp_ball: degree must be >= 0");
  if (p.num == p.den) return total_degree(dim, degree); // p = 1

  MultiIndexSet set;
  set.dim_ = dim;
  set.kind_ = Kind::LpBall;
  set.degree_ = degree;
  set.p_ = p;

  MultiIndex alpha(static_cast<std::size_t>(dim), 0);
  // Per-coordinate bound: alpha_i^p <= k^p forces alpha_i <= k for any p>0.
  // The prefix test prunes whole subtrees because entries only add mass.
  auto recurse = [&](auto&& self, int coord) -> void {
    if (compare_lp_power_sum(alpha, p, degree) > 0) return;
    if (coord == dim) {
      set.indices_.push_back(alpha);
      return;
    }
    for (int a = 0; a <= degree; ++a) {
      alpha[static_cast<std::size_t>(coord)] = a;
      if (a > 0 && compare_lp_power_sum(alpha, p, degree) > 0) break;
      self(self, coord + 1);
    }
    alpha[static_cast<std::size_t>(coord)] = 0;
  };
  recurse(recurse, 0);
  std::sort(set.indices_.begin(), set.indices_.end(), graded_lex_less);
  return set;
}

MultiIndexSet MultiIndexSet::explicit_set(int dim, std::vector<MultiIndex> indices) {
  if (dim < 1) throw std::invalid_argument("explicit_set: dim must be >= 1");
  if (indices.empty()) throw std::invalid_argument("explicit_set: at least one index required");
  std::set<MultiIndex> seen;
  for (const auto& alpha : indices) {
    if (static_cast<int>(alpha.size()) != dim)
      throw std::invalid_argument("explicit_set: index dimension mismatch");
    for (int a : alpha)
      if (a < 0) throw std::invalid_argument("explicit_set: negative entry");
    if (!seen.insert(alpha).second) throw std::invalid_argument("explicit_set: duplicate index");
  }
  MultiIndexSet set;
  set.dim_ = dim;
  set.kind_ = Kind::Explicit;
  set.indices_ = std::move(indices);
  set.zero_missing_ = seen.find(MultiIndex(static_cast<std::size_t>(dim), 0)) == seen.end();
  for (const auto& alpha : set.indices_) set.degree_ = std::max(set.degree_, total_order(alpha));
  return set;
}

int MultiIndexSet::max_degree() const {
  if (indices_.empty()) throw std::logic_error("max_degree of empty set");
  int m = 0;
  for (const auto& alpha : indices_) m = std::max(m, total_order(alpha));
  return m;
}

bool MultiIndexSet::contains(const MultiIndex& alpha) const {
  return std::find(indices_.begin(), indices_.end(), alpha) != indices_.end();
}

std::string MultiIndexSet::kind_string() const {
  switch (kind_) {
    case Kind::TotalDegree: return "td:" + std::to_string(degree_);
    case Kind::LpBall: return "lp:" + p_.str() + ":" + std::to_string(degree_);
    case Kind::Explicit: return "explicit";
  }
  return "explicit";
}

void MultiIndexSet::write(std::ostream& out) const {
  out << "d=" << dim_ << " N=" << size() << " kind=" << kind_string() << "\n";
  for (const auto& alpha : indices_) {
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (j) out << ' ';
      out << alpha[j];
    }
    out << "\n";
  }
}

MultiIndexSet MultiIndexSet::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("MultiIndexSet::read: missing header");
  int dim = 0, count = 0;
  std::string kind;
  {
    std::istringstream hs(header);
    std::string field;
    while (hs >> field) {
      if (field.rfind("d=", 0) == 0) dim = std::stoi(field.substr(2));
      else if (field.rfind("N=", 0) == 0) count = std::stoi(field.substr(2));
      else if (field.rfind("kind=", 0) == 0) kind = field.substr(5);
    }
  }
  if (dim < 1 || count < 1) throw std::runtime_error("MultiIndexSet::read: bad header: " + header);
  std::vector<MultiIndex> indices;
  indices.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("MultiIndexSet::read: truncated body");
    std::istringstream ls(line);
    MultiIndex alpha;
    int a;
    while (ls >> a) alpha.push_back(a);
    if (static_cast<int>(alpha.size()) != dim)
      throw std::runtime_error("MultiIndexSet::read: row has wrong dimension");
    indices.push_back(std::move(alpha));
  }
  MultiIndexSet set = explicit_set(dim, std::move(indices));
  // Restore the declared kind so round-trips are faithful.
  if (kind.rfind("td:", 0) == 0) {
    set.kind_ = Kind::TotalDegree;
    set.degree_ = std::stoi(kind.substr(3));
  } else if (kind.rfind("lp:", 0) == 0) {
    const auto rest = kind.substr(3);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::runtime_error("MultiIndexSet::read: bad lp kind");
    set.kind_ = Kind::LpBall;
    set.p_ = Rational::parse(rest.substr(0, colon));
    set.degree_ = std::stoi(rest.substr(colon + 1));
  }
  return set;
}

} // namespace xls
