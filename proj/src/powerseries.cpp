#include "capprox/powerseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capprox::series {

namespace {

void check_same_shape(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.dim != b.dim)
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int d, int p) : dim(d), cap(p) {
  if (d < 1) throw std::invalid_argument("series: dim must be >= 1");
  if (p < 0) throw std::invalid_argument("series: cap must be >= 0");
  c.assign(static_cast<std::size_t>(midx::count_upto(d, p)), Complex(0));
}

TruncatedSeries zero(int dim, int cap) { return TruncatedSeries(dim, cap); }

TruncatedSeries one(int dim, int cap) {
  TruncatedSeries s(dim, cap);
  s.c[0] = Complex(1);
  return s;
}

TruncatedSeries monomial(int dim, int cap, const midx::MultiIndex& alpha, Complex coeff) {
  TruncatedSeries s(dim, cap);
  set_coeff(s, alpha, coeff);
  return s;
}

Complex coeff(const TruncatedSeries& s, const midx::MultiIndex& alpha) {
  if (alpha.dim() != s.dim) throw std::invalid_argument("coeff: dimension mismatch");
  if (alpha.degree > s.cap) return Complex(0);
  return s.c[static_cast<std::size_t>(midx::rank(alpha))];
}

void set_coeff(TruncatedSeries& s, const midx::MultiIndex& alpha, Complex v) {
  if (alpha.dim() != s.dim) throw std::invalid_argument("set_coeff: dimension mismatch");
  if (alpha.degree > s.cap) throw std::invalid_argument("set_coeff: degree above cap");
  s.c[static_cast<std::size_t>(midx::rank(alpha))] = v;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_shape(a, b, "add");
  TruncatedSeries out(a.dim, std::min(a.cap, b.cap));
  for (std::size_t i = 0; i < out.size(); ++i) out.c[i] = a.c[i] + b.c[i];
  return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_shape(a, b, "sub");
  TruncatedSeries out(a.dim, std::min(a.cap, b.cap));
  for (std::size_t i = 0; i < out.size(); ++i) out.c[i] = a.c[i] - b.c[i];
  return out;
}

TruncatedSeries scale(const TruncatedSeries& a, Complex s) {
  TruncatedSeries out = a;
  for (auto& v : out.c) v *= s;
  return out;
}

TruncatedSeries retrunc(const TruncatedSeries& a, int new_cap) {
  TruncatedSeries out(a.dim, new_cap);
  const std::size_t n = std::min(out.size(), a.size());
  std::copy(a.c.begin(), a.c.begin() + n, out.c.begin());
  return out;
}

TruncatedSeries binomial_series(double theta, int sign, int cap) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("binomial_series: sign must be +-1");
  TruncatedSeries s(1, cap);
  s.c[0] = Complex(1);
  for (int k = 1; k <= cap; ++k)
    s.c[k] = s.c[k - 1] * (static_cast<double>(sign) * (theta - k + 1) / k);
  return s;
}

std::optional<std::pair<int, std::vector<Complex>>> as_univariate(const TruncatedSeries& s) {
  auto tab = midx::basis_for(s.dim, s.cap);
  int coord = -1;
  for (std::size_t r = 1; r < s.size(); ++r) {
    if (s.c[r] == Complex(0)) continue;
    const int* e = tab->exponents(r);
    int support = -1;
    for (int j = 0; j < s.dim; ++j) {
      if (e[j] == 0) continue;
      if (support >= 0) return std::nullopt;  // two coordinates in one monomial
      support = j;
    }
    if (coord < 0) coord = support;
    else if (support != coord) return std::nullopt;
  }
  if (coord < 0) coord = 0;  // constant
  std::vector<Complex> out(static_cast<std::size_t>(s.cap) + 1, Complex(0));
  std::size_t t = 0;
  for (int k = 0; k <= s.cap; ++k) {
    out[k] = s.c[t];
    if (k < s.cap) t = tab->shift(t, coord);
  }
  return std::make_pair(coord, std::move(out));
}

TruncatedSeries lift(const std::vector<Complex>& coeffs1d, int dim, int j, int cap) {
  if (j < 0 || j >= dim) throw std::invalid_argument("lift: coordinate out of range");
  TruncatedSeries out(dim, cap);
  auto tab = midx::basis_for(dim, cap);
  std::size_t t = 0;
  for (int k = 0; k <= cap; ++k) {
    out.c[t] = k < static_cast<int>(coeffs1d.size()) ? coeffs1d[k] : Complex(0);
    if (k < cap) t = tab->shift(t, j);
  }
  return out;
}

namespace {

// out += a * s(z_j), all at out.cap, using successor-table walks.
void accumulate_mul_univariate(TruncatedSeries& out, const TruncatedSeries& a,
                               int j, const std::vector<Complex>& s,
                               const midx::BasisTable& tab) {
  const int cap = out.cap;
  const std::size_t na = std::min(a.size(), out.size());
  const int ks = static_cast<int>(s.size()) - 1;
  for (std::size_t r = 0; r < na; ++r) {
    const Complex av = a.c[r];
    if (av == Complex(0)) continue;
    const int room = cap - tab.degree(r);
    std::size_t t = r;
    for (int k = 0; k <= std::min(room, ks); ++k) {
      if (s[k] != Complex(0)) out.c[t] += av * s[k];
      if (k < room) t = tab.shift(t, j);
    }
  }
}

}  // namespace

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_shape(a, b, "mul");
  const int cap = std::min(a.cap, b.cap);
  TruncatedSeries out(a.dim, cap);

  if (a.dim == 1) {  // plain convolution, rank == degree
    const int la = std::min(a.cap, cap), lb = std::min(b.cap, cap);
    for (int i = 0; i <= la; ++i) {
      if (a.c[i] == Complex(0)) continue;
      const int top = std::min(lb, cap - i);
      for (int k = 0; k <= top; ++k) out.c[i + k] += a.c[i] * b.c[k];
    }
    return out;
  }

  auto tab = midx::basis_for(out.dim, cap);
  if (auto ub = as_univariate(b)) {
    accumulate_mul_univariate(out, a, ub->first, ub->second, *tab);
    return out;
  }
  if (auto ua = as_univariate(a)) {
    accumulate_mul_univariate(out, b, ua->first, ua->second, *tab);
    return out;
  }

  // general dense path; collect supports first to skip zeros
  std::vector<std::size_t> sa, sb;
  const std::size_t na = std::min(a.size(), out.size()), nb = std::min(b.size(), out.size());
  for (std::size_t r = 0; r < na; ++r)
    if (a.c[r] != Complex(0)) sa.push_back(r);
  for (std::size_t r = 0; r < nb; ++r)
    if (b.c[r] != Complex(0)) sb.push_back(r);
  std::vector<int> sum(a.dim);
  for (std::size_t ia : sa) {
    const int* ea = tab->exponents(ia);
    const int da = tab->degree(ia);
    for (std::size_t ib : sb) {
      if (da + tab->degree(ib) > cap) break;  // sb is degree-sorted (rank order)
      const int* eb = tab->exponents(ib);
      for (int j = 0; j < a.dim; ++j) sum[j] = ea[j] + eb[j];
      out.c[tab->rank_of(sum.data())] += a.c[ia] * b.c[ib];
    }
  }
  return out;
}

TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_shape(a, b, "div");
  if (std::abs(b.c[0]) <= 1e-14)
    throw std::invalid_argument("div: constant term of divisor is (numerically) zero");
  const int cap = std::min(a.cap, b.cap);
  TruncatedSeries q(a.dim, cap);
  const Complex b0 = b.c[0];

  if (a.dim == 1) {
    for (int t = 0; t <= cap; ++t) {
      Complex acc = a.c[t];
      for (int k = 1; k <= t; ++k) acc -= b.c[k] * q.c[t - k];
      q.c[t] = acc / b0;
    }
    return q;
  }

  auto tab = midx::basis_for(a.dim, cap);
  const std::size_t n = q.size();
  std::vector<int> diff(a.dim);
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc = t < a.size() ? a.c[t] : Complex(0);
    const int* et = tab->exponents(t);
    const int dt = tab->degree(t);
    for (std::size_t rb = 1; rb < n && tab->degree(rb) <= dt; ++rb) {
      if (b.c[rb] == Complex(0)) continue;
      const int* eb = tab->exponents(rb);
      bool fits = true;
      for (int j = 0; j < a.dim; ++j) {
        diff[j] = et[j] - eb[j];
        if (diff[j] < 0) { fits = false; break; }
      }
      if (!fits) continue;
      acc -= b.c[rb] * q.c[tab->rank_of(diff.data())];
    }
    q.c[t] = acc / b0;
  }
  return q;
}

TruncatedSeries compose1d(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (outer.dim != 1 || inner.dim != 1)
    throw std::invalid_argument("compose1d: both series must be univariate");
  if (std::abs(inner.c[0]) > 1e-14)
    throw std::invalid_argument("compose1d: inner constant term must vanish");
  const int cap = std::min(outer.cap, inner.cap);
  TruncatedSeries acc = zero(1, cap);
  TruncatedSeries in = retrunc(inner, cap);
  for (int k = cap; k >= 0; --k) {  // Horner in the truncated ring
    acc = mul(acc, in);
    acc.c[0] += (k < static_cast<int>(outer.size()) ? outer.c[k] : Complex(0));
  }
  return acc;
}

PowerCache::PowerCache(std::vector<TruncatedSeries> factors, int cap, int max_exponent)
    : cap_(cap) {
  if (factors.empty()) throw std::invalid_argument("PowerCache: no factors");
  const int d = static_cast<int>(factors.size());
  for (auto& f : factors) {
    if (f.dim != d) throw std::invalid_argument("PowerCache: factor dimension mismatch");
    if (f.cap < cap) throw std::invalid_argument("PowerCache: factor cap below requested cap");
  }
  pow2_.resize(d);
  for (int j = 0; j < d; ++j) {
    TruncatedSeries p = retrunc(factors[j], cap);
    pow2_[j].push_back(p);
    for (int m = 1; (1 << m) <= max_exponent; ++m) {
      p = mul(p, p);
      pow2_[j].push_back(p);
    }
  }
}

TruncatedSeries PowerCache::power(const midx::MultiIndex& alpha) const {
  const int d = static_cast<int>(pow2_.size());
  if (alpha.dim() != d) throw std::invalid_argument("PowerCache: alpha dimension mismatch");
  TruncatedSeries out = one(d, cap_);
  for (int j = 0; j < d; ++j) {
    unsigned a = static_cast<unsigned>(alpha.e[j]);
    for (int m = 0; a != 0; ++m, a >>= 1) {
      if (!(a & 1u)) continue;
      if (m >= static_cast<int>(pow2_[j].size()))
        throw std::invalid_argument("PowerCache: exponent above cached range");
      out = mul(out, pow2_[j][m]);
    }
  }
  return out;
}

TruncatedSeries tensor_power(const std::vector<TruncatedSeries>& factors,
                             const midx::MultiIndex& alpha, int cap) {
  int max_e = 1;
  for (int v : alpha.e) max_e = std::max(max_e, v);
  PowerCache cache(factors, cap, max_e);
  return cache.power(alpha);
}

Complex evaluate(const TruncatedSeries& s, const std::vector<Complex>& z) {
  if (static_cast<int>(z.size()) != s.dim)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  auto tab = midx::basis_for(s.dim, s.cap);
  Complex acc(0);
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (s.c[r] == Complex(0)) continue;
    const int* e = tab->exponents(r);
    Complex term = s.c[r];
    for (int j = 0; j < s.dim; ++j)
      for (int k = 0; k < e[j]; ++k) term *= z[j];
    acc += term;
  }
  return acc;
}

}  // namespace capprox::series
