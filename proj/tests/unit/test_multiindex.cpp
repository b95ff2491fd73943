#include <doctest.h>

#include <cmath>
#include <sstream>

#include "xls/multiindex.hpp"

using xls::MultiIndex;
using xls::MultiIndexSet;
using xls::Rational;

namespace {

long long binomial(int n, int k) {
  long long value = 1;
  for (int i = 0; i < k; ++i) value = value * (n - i) / (i + 1);
  return value;
}

// Direct floating-point membership check used as the enumeration oracle;
// boundary hits are resolved toward inclusion.
bool brute_member(const MultiIndex& alpha, double p, int k) {
  long double sum = 0.0L;
  for (int a : alpha) sum += powl(static_cast<long double>(a), static_cast<long double>(p));
  const long double bound = powl(static_cast<long double>(k), static_cast<long double>(p));
  return sum <= bound + 1e-9L;
}

} // namespace

TEST_CASE("total-degree sets: counts and canonical order") {
  const auto set = MultiIndexSet::total_degree(2, 2);
  REQUIRE(set.size() == 6);
  const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (int n = 0; n < 6; ++n) CHECK(set[n] == expected[static_cast<std::size_t>(n)]);

  CHECK(MultiIndexSet::total_degree(1, 0).size() == 1);
  CHECK(MultiIndexSet::total_degree(4, 3).size() == binomial(7, 4));
  for (int d = 1; d <= 4; ++d)
    for (int k = 0; k <= 6; ++k)
      CHECK(MultiIndexSet::total_degree(d, k).size() == binomial(d + k, d));
}

TEST_CASE("lp-ball sets") {
  SUBCASE("p=1 reverts to total degree") {
    const auto lp = MultiIndexSet::lp_ball(2, Rational{1, 1}, 3);
    const auto td = MultiIndexSet::total_degree(2, 3);
    REQUIRE(lp.size() == td.size());
    for (int n = 0; n < lp.size(); ++n) CHECK(lp[n] == td[n]);
  }

  SUBCASE("d=2, p=2/5, k=2 keeps only the axes") {
    const auto set = MultiIndexSet::lp_ball(2, Rational{2, 5}, 2);
    REQUIRE(set.size() == 5);
    const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}};
    for (int n = 0; n < 5; ++n) CHECK(set[n] == expected[static_cast<std::size_t>(n)]);
    CHECK(set.max_degree() == 2);
  }

  SUBCASE("one dimension: every lp ball is total degree") {
    const auto set = MultiIndexSet::lp_ball(1, Rational{2, 5}, 5);
    CHECK(set.size() == 6);
  }

  SUBCASE("subset of total degree for p < 1, equality only at p = 1") {
    for (int k : {2, 4}) {
      const auto td = MultiIndexSet::total_degree(3, k);
      const auto lp = MultiIndexSet::lp_ball(3, Rational{2, 5}, k);
      CHECK(lp.size() < td.size());
      for (const auto& alpha : lp.indices()) CHECK(td.contains(alpha));
    }
  }

  SUBCASE("agrees with brute-force enumeration over the bounding box") {
    for (int d = 1; d <= 3; ++d) {
      for (int k = 0; k <= 6; ++k) {
        for (Rational p : {Rational{2, 5}, Rational{1, 2}, Rational{2, 1}}) {
          const auto set = MultiIndexSet::lp_ball(d, p, k);
          // walk the box [0,k]^d
          MultiIndex alpha(static_cast<std::size_t>(d), 0);
          long long box_members = 0;
          for (;;) {
            if (brute_member(alpha, p.value(), k)) {
              ++box_members;
              CHECK(set.contains(alpha));
            }
            int j = 0;
            while (j < d && ++alpha[static_cast<std::size_t>(j)] > k) {
              alpha[static_cast<std::size_t>(j)] = 0;
              ++j;
            }
            if (j == d) break;
          }
          // For p >= 1 entries can exceed the box only in other coordinates'
          // absence; all our p <= 2 candidates stay inside [0,k]^d.
          CHECK(set.size() == box_members);
        }
      }
    }
  }
}

TEST_CASE("exact boundary handling in the power-sum comparison") {
  // (2,0) sits exactly on the p=2/5 sphere of radius 2.
  CHECK(xls::compare_lp_power_sum({2, 0}, Rational{2, 5}, 2) == 0);
  // sqrt(1) + sqrt(4) = 3 = sqrt(9): equality across different radicands.
  CHECK(xls::compare_lp_power_sum({1, 4}, Rational{1, 2}, 9) == 0);
  CHECK(xls::compare_lp_power_sum({1, 1}, Rational{2, 5}, 2) > 0);
  CHECK(xls::compare_lp_power_sum({1, 0}, Rational{2, 5}, 2) < 0);
}

TEST_CASE("max_degree") {
  CHECK(MultiIndexSet::total_degree(3, 4).max_degree() == 4);
  CHECK(MultiIndexSet::explicit_set(2, {{0, 0}}).max_degree() == 0);
  CHECK(MultiIndexSet::lp_ball(2, Rational{2, 5}, 2).max_degree() == 2);
}

TEST_CASE("explicit sets") {
  const auto set = MultiIndexSet::explicit_set(2, {{1, 0}, {0, 2}});
  CHECK(set.zero_index_missing());
  CHECK_FALSE(MultiIndexSet::explicit_set(2, {{0, 0}, {1, 1}}).zero_index_missing());
  CHECK_THROWS(MultiIndexSet::explicit_set(2, {{1, 0}, {1, 0}}));
  CHECK_THROWS(MultiIndexSet::explicit_set(2, {{1}}));
}

TEST_CASE("serialization round-trips with identical order") {
  const auto original = MultiIndexSet::lp_ball(3, Rational{2, 5}, 4);
  std::stringstream buffer;
  original.write(buffer);
  const auto restored = MultiIndexSet::read(buffer);
  REQUIRE(restored.size() == original.size());
  CHECK(restored.dim() == original.dim());
  CHECK(restored.kind() == original.kind());
  for (int n = 0; n < original.size(); ++n) CHECK(restored[n] == original[n]);

  std::stringstream again;
  restored.write(again);
  std::stringstream first;
  original.write(first);
  CHECK(again.str() == first.str());
}
