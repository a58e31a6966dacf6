#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace capprox::midx {

// Exponent tuple alpha = (a_1, ..., a_d), a_j >= 0, with cached total degree.
struct MultiIndex {
  std::vector<int> e;
  int degree = 0;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps);

  int dim() const { return static_cast<int>(e.size()); }
  bool operator==(const MultiIndex& o) const { return e == o.e; }
};

// binomial(n, k) in exact integer arithmetic; throws std::overflow_error
// instead of wrapping.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Number of alpha with dim d and |alpha| <= p: binomial(d+p, d).
// p < 0 yields 0.
std::uint64_t count_upto(int d, int p);

// Number of alpha with dim d and |alpha| == k: binomial(k+d-1, d-1).
std::uint64_t count_exact(int d, int k);

// All alpha with |alpha| <= p, ordered by total degree and, within a
// degree, by descending lexicographic comparison of the tuples:
// d=2, p=2 -> (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).
std::vector<MultiIndex> enumerate_upto(int d, int p);

// Streaming variant of enumerate_upto; fn receives indices in the same order.
void for_each_upto(int d, int p, const std::function<void(const MultiIndex&)>& fn);

// Position of alpha in the enumeration order above.
std::uint64_t rank(const MultiIndex& alpha);

// Inverse of rank.
MultiIndex unrank(int d, std::uint64_t i);

// Precomputed enumeration data for one (d, cap) shape: flat exponent
// storage, degree offsets, a binomial table for O(d) rank queries and
// per-coordinate successor tables rank(alpha) -> rank(alpha + e_j).
// Shared by the series arithmetic; safe to use concurrently once built.
class BasisTable {
 public:
  BasisTable(int d, int cap);

  int dim() const { return d_; }
  int cap() const { return cap_; }
  std::size_t size() const { return n_; }

  const int* exponents(std::size_t r) const { return flat_.data() + r * d_; }
  int degree(std::size_t r) const { return degree_[r]; }
  std::size_t degree_offset(int k) const { return offset_[k]; }  // first rank of degree k

  // npos when alpha + e_j leaves the cap.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t shift(std::size_t r, int j) const { return shift_[j][r]; }

  // rank of an exponent tuple given as a raw array; degree must be <= cap.
  std::size_t rank_of(const int* exps) const;

 private:
  int d_, cap_;
  std::size_t n_;
  std::vector<int> flat_;
  std::vector<int> degree_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::uint64_t>> binom_;  // binom_[n][k], k <= d
  std::vector<std::vector<std::size_t>> shift_;
};

// Cached table lookup (mutex-guarded registry keyed by (d, cap)).
std::shared_ptr<const BasisTable> basis_for(int d, int cap);

}  // namespace capprox::midx
