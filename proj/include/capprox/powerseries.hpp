#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "capprox/multiindex.hpp"

namespace capprox::series {

using Complex = std::complex<double>;

// Polynomial truncation of a d-variate power series at total degree cap.
// Coefficients are stored densely in the graded enumeration order of
// midx::enumerate_upto(dim, cap); the enumeration is prefix-stable in cap,
// so rank r means the same exponent tuple at every cap >= degree(r).
struct TruncatedSeries {
  int dim = 1;
  int cap = 0;
  std::vector<Complex> c;

  TruncatedSeries() : c(1, Complex(0)) {}
  TruncatedSeries(int d, int p);

  std::size_t size() const { return c.size(); }
};

TruncatedSeries zero(int dim, int cap);
TruncatedSeries one(int dim, int cap);
TruncatedSeries monomial(int dim, int cap, const midx::MultiIndex& alpha, Complex coeff);

Complex coeff(const TruncatedSeries& s, const midx::MultiIndex& alpha);
void set_coeff(TruncatedSeries& s, const midx::MultiIndex& alpha, Complex v);

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, Complex s);

// Copy with a different cap (coefficients above new_cap dropped, missing
// ones zero).
TruncatedSeries retrunc(const TruncatedSeries& a, int new_cap);

// Coefficients of (1 + sign z)^theta, univariate, from the recurrence
// c_k = c_{k-1} * sign * (theta - k + 1) / k with c_0 = 1.
TruncatedSeries binomial_series(double theta, int sign, int cap);

// Cauchy product truncated at min(a.cap, b.cap). Fast paths: dim 1
// convolution, and factors supported on a single coordinate.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// q with mul(q, b) = a up to the cap. Requires |b_0| > 1e-14.
TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b);

// Univariate composition outer(inner(z)); requires dim 1 on both sides and
// |inner_0| <= 1e-14 so the truncation is self-consistent.
TruncatedSeries compose1d(const TruncatedSeries& outer, const TruncatedSeries& inner);

// prod_j factors[j]^{alpha_j} truncated at cap, via binary exponentiation
// of each factor. factors[j] must have dim d and cap >= cap.
TruncatedSeries tensor_power(const std::vector<TruncatedSeries>& factors,
                             const midx::MultiIndex& alpha, int cap);

// Shared repeated-squaring table for many tensor_power calls against the
// same factors (one compression column per alpha). Read-only after build.
class PowerCache {
 public:
  PowerCache(std::vector<TruncatedSeries> factors, int cap, int max_exponent);
  TruncatedSeries power(const midx::MultiIndex& alpha) const;
  int cap() const { return cap_; }

 private:
  int cap_;
  std::vector<std::vector<TruncatedSeries>> pow2_;  // pow2_[j][m] = factors[j]^(2^m)
};

// Series supported on a single coordinate j: returns (j, univariate
// coefficients). Constants report coordinate 0.
std::optional<std::pair<int, std::vector<Complex>>> as_univariate(const TruncatedSeries& s);

// Embed univariate coefficients as a d-variate series in coordinate j.
TruncatedSeries lift(const std::vector<Complex>& coeffs1d, int dim, int j, int cap);

// Evaluate the truncated polynomial at a point.
Complex evaluate(const TruncatedSeries& s, const std::vector<Complex>& z);

}  // namespace capprox::series
