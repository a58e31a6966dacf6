#include <cstdint>
#include <stdexcept>
#include <vector>

#include "capprox/multiindex.hpp"
#include "doctest.h"

using namespace capprox::midx;

namespace {

// independent oracle: additive Pascal triangle, no factorials
std::vector<std::vector<std::uint64_t>> pascal(int rows) {
  std::vector<std::vector<std::uint64_t>> t(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

}  // namespace

TEST_CASE("binomial matches an additive Pascal triangle") {
  const auto t = pascal(40);
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == t[n][k]);
  CHECK(binomial(5, 9) == 0);
}

TEST_CASE("binomial overflow is an error, not a wrap") {
  CHECK_THROWS_AS((void)binomial(100, 50), std::overflow_error);
  CHECK(binomial(66, 33) == 7219428434016265740ull);
}

TEST_CASE("counting formulas agree with each other and with Pascal") {
  const auto t = pascal(40);
  for (int d = 1; d <= 6; ++d)
    for (int p = 0; p <= 30; ++p) {
      CHECK(count_upto(d, p) == t[d + p][d]);
      std::uint64_t acc = 0;
      for (int k = 0; k <= p; ++k) acc += count_exact(d, k);
      CHECK(acc == count_upto(d, p));
    }
  CHECK(count_upto(2, -1) == 0);
  CHECK(count_exact(3, 0) == 1);
}

TEST_CASE("enumeration order: ascending degree, descending lex inside a degree") {
  const auto v = enumerate_upto(2, 2);
  const std::vector<std::vector<int>> want = {{0, 0}, {1, 0}, {0, 1},
                                              {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(v.size() == want.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i].e == want[i]);
}

TEST_CASE("enumeration size, ordering and prefix stability") {
  for (int d = 1; d <= 4; ++d) {
    const auto big = enumerate_upto(d, 9);
    REQUIRE(big.size() == count_upto(d, 9));
    const auto small = enumerate_upto(d, 7);
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i].e == big[i].e);
    for (std::size_t i = 1; i < big.size(); ++i) {
      const auto& a = big[i - 1];
      const auto& b = big[i];
      CHECK(a.degree <= b.degree);
      if (a.degree == b.degree) CHECK(a.e > b.e);  // descending lex
    }
  }
}

TEST_CASE("for_each_upto streams the same sequence as enumerate_upto") {
  const auto v = enumerate_upto(3, 5);
  std::size_t i = 0;
  for_each_upto(3, 5, [&](const MultiIndex& a) {
    REQUIRE(i < v.size());
    CHECK(a.e == v[i].e);
    ++i;
  });
  CHECK(i == v.size());
}

TEST_CASE("rank and unrank invert each other and match the enumeration") {
  for (int d : {1, 2, 3, 4}) {
    const auto v = enumerate_upto(d, 6);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(rank(v[i]) == i);
      CHECK(unrank(d, i).e == v[i].e);
    }
  }
}

TEST_CASE("multi-index constructor rejects negative exponents") {
  CHECK_THROWS_AS(MultiIndex({1, -1}), std::invalid_argument);
  CHECK(MultiIndex({2, 0, 3}).degree == 5);
}

TEST_CASE("basis table mirrors the enumeration") {
  const int d = 3, cap = 7;
  BasisTable t(d, cap);
  const auto v = enumerate_upto(d, cap);
  REQUIRE(t.size() == v.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (int j = 0; j < d; ++j) CHECK(t.exponents(r)[j] == v[r].e[j]);
    CHECK(t.degree(r) == v[r].degree);
    CHECK(t.rank_of(v[r].e.data()) == r);
  }
  for (int k = 0; k <= cap; ++k) CHECK(t.degree_offset(k) == count_upto(d, k - 1));
}

TEST_CASE("basis table shift gives the rank of alpha plus a unit vector") {
  const int d = 2, cap = 5;
  BasisTable t(d, cap);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (int j = 0; j < d; ++j) {
      std::vector<int> e(t.exponents(r), t.exponents(r) + d);
      e[j] += 1;
      const auto s = t.shift(r, j);
      if (t.degree(r) == cap) {
        CHECK(s == BasisTable::npos);
      } else {
        REQUIRE(s != BasisTable::npos);
        CHECK(s == rank(MultiIndex(e)));
      }
    }
  }
}

TEST_CASE("basis_for caches one table per shape") {
  const auto a = basis_for(2, 6);
  const auto b = basis_for(2, 6);
  CHECK(a.get() == b.get());
  CHECK(basis_for(2, 7).get() != a.get());
}
