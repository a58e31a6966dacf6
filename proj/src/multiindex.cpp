#include "capprox/multiindex.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace capprox::midx {

MultiIndex::MultiIndex(std::vector<int> exps) : e(std::move(exps)) {
  if (e.empty()) throw std::invalid_argument("multiindex: dimension must be >= 1");
  for (int v : e)
    if (v < 0) throw std::invalid_argument("multiindex: negative exponent");
  degree = std::accumulate(e.begin(), e.end(), 0);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at each step: product of i consecutive integers
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t count_upto(int d, int p) {
  if (d < 1) throw std::invalid_argument("count_upto: d must be >= 1");
  if (p < 0) return 0;
  return binomial(static_cast<std::uint64_t>(d) + p, d);
}

std::uint64_t count_exact(int d, int k) {
  if (d < 1) throw std::invalid_argument("count_exact: d must be >= 1");
  if (k < 0) return 0;
  return binomial(static_cast<std::uint64_t>(k) + d - 1, d - 1);
}

namespace {

// Advance a fixed-degree composition one step in the enumeration order
// (descending lex). Returns false when c was the last one, (0,...,0,k).
bool next_composition(std::vector<int>& c) {
  const int d = static_cast<int>(c.size());
  if (d == 1) return false;
  int i = d - 2;
  while (i >= 0 && c[i] == 0) --i;
  if (i < 0) return false;
  int tail = 0;
  for (int j = i + 1; j < d; ++j) {
    tail += c[j];
    c[j] = 0;
  }
  --c[i];
  c[i + 1] = tail + 1;
  return true;
}

}  // namespace

void for_each_upto(int d, int p, const std::function<void(const MultiIndex&)>& fn) {
  if (d < 1) throw std::invalid_argument("enumerate: d must be >= 1");
  MultiIndex alpha;
  alpha.e.assign(d, 0);
  for (int k = 0; k <= p; ++k) {
    std::fill(alpha.e.begin(), alpha.e.end(), 0);
    alpha.e[0] = k;
    alpha.degree = k;
    do {
      fn(alpha);
    } while (next_composition(alpha.e));
  }
}

std::vector<MultiIndex> enumerate_upto(int d, int p) {
  const std::uint64_t n = count_upto(d, p);
  if (n > std::numeric_limits<std::size_t>::max() / (sizeof(int) * d))
    throw std::overflow_error("enumerate_upto: list does not fit in memory");
  std::vector<MultiIndex> out;
  out.reserve(n);
  for_each_upto(d, p, [&](const MultiIndex& a) { out.push_back(a); });
  return out;
}

std::uint64_t rank(const MultiIndex& alpha) {
  const int d = alpha.dim();
  if (d < 1) throw std::invalid_argument("rank: empty multiindex");
  std::uint64_t r = count_upto(d, alpha.degree - 1);
  int rem = alpha.degree;
  for (int j = 0; j + 1 < d; ++j) {
    // earlier tuples of the same degree have coordinate j strictly larger
    r += count_upto(d - j - 1, rem - alpha.e[j] - 1);
    rem -= alpha.e[j];
  }
  return r;
}

MultiIndex unrank(int d, std::uint64_t i) {
  if (d < 1) throw std::invalid_argument("unrank: d must be >= 1");
  int k = 0;
  std::uint64_t below = 0;  // count of indices of degree < k
  while (below + count_exact(d, k) <= i) {
    below += count_exact(d, k);
    ++k;
  }
  std::uint64_t r = i - below;
  MultiIndex alpha;
  alpha.e.assign(d, 0);
  alpha.degree = k;
  int rem = k;
  for (int j = 0; j + 1 < d; ++j) {
    int c = rem;
    for (;; --c) {
      const std::uint64_t cnt = count_exact(d - j - 1, rem - c);
      if (r < cnt) break;
      r -= cnt;
    }
    alpha.e[j] = c;
    rem -= c;
  }
  alpha.e[d - 1] = rem;
  return alpha;
}

BasisTable::BasisTable(int d, int cap) : d_(d), cap_(cap) {
  if (d < 1) throw std::invalid_argument("BasisTable: d must be >= 1");
  if (cap < 0) throw std::invalid_argument("BasisTable: cap must be >= 0");
  const std::uint64_t n = count_upto(d, cap);
  n_ = static_cast<std::size_t>(n);

  binom_.assign(cap + d + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (int nn = 0; nn <= cap + d; ++nn) {
    binom_[nn][0] = 1;
    for (int kk = 1; kk <= d && kk <= nn; ++kk)
      binom_[nn][kk] = binomial(nn, kk);
  }

  flat_.reserve(n_ * d);
  degree_.reserve(n_);
  offset_.assign(cap + 2, 0);
  for_each_upto(d, cap, [&](const MultiIndex& a) {
    flat_.insert(flat_.end(), a.e.begin(), a.e.end());
    degree_.push_back(a.degree);
  });
  for (int k = 0; k <= cap + 1; ++k)
    offset_[k] = static_cast<std::size_t>(count_upto(d, k - 1));

  shift_.assign(d, std::vector<std::size_t>(n_, npos));
  std::vector<int> tmp(d);
  for (std::size_t r = 0; r < n_; ++r) {
    if (degree_[r] >= cap) continue;
    const int* e = exponents(r);
    for (int j = 0; j < d; ++j) {
      std::copy(e, e + d, tmp.begin());
      ++tmp[j];
      shift_[j][r] = rank_of(tmp.data());
    }
  }
}

std::size_t BasisTable::rank_of(const int* exps) const {
  int k = 0;
  for (int j = 0; j < d_; ++j) k += exps[j];
  std::size_t r = offset_[k];
  int rem = k;
  for (int j = 0; j + 1 < d_; ++j) {
    const int m = rem - exps[j] - 1;   // count_upto(d-j-1, m)
    if (m >= 0) r += binom_[m + d_ - j - 1][d_ - j - 1];
    rem -= exps[j];
  }
  return r;
}

std::shared_ptr<const BasisTable> basis_for(int d, int cap) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const BasisTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{d, cap}];
  if (!slot) slot = std::make_shared<BasisTable>(d, cap);
  return slot;
}

}  // namespace capprox::midx
