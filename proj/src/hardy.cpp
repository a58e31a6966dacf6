#include "capprox/hardy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace capprox::hardy {

namespace {
constexpr double kInteriorMargin = 1e-12;
}

int DomainSpec::dimension() const {
  return std::accumulate(blocks.begin(), blocks.end(), 0);
}

bool DomainSpec::is_polydisk() const {
  for (int l : blocks)
    if (l != 1) return false;
  return true;
}

DomainSpec DomainSpec::polydisk(int d) {
  if (d < 1) throw std::invalid_argument("polydisk: d must be >= 1");
  return DomainSpec{std::vector<int>(d, 1)};
}

DomainSpec DomainSpec::ball(int d) {
  if (d < 1) throw std::invalid_argument("ball: d must be >= 1");
  return DomainSpec{{d}};
}

std::vector<double> block_norms(const DomainSpec& dom, const Point& p) {
  if (p.dim() != dom.dimension())
    throw std::invalid_argument("block_norms: point dimension mismatch");
  std::vector<double> out;
  out.reserve(dom.blocks.size());
  int at = 0;
  for (int l : dom.blocks) {
    double s = 0;
    for (int j = 0; j < l; ++j) s += std::norm(p.z[at + j]);
    out.push_back(std::sqrt(s));
    at += l;
  }
  return out;
}

bool is_interior(const DomainSpec& dom, const Point& p) {
  for (double r : block_norms(dom, p))
    if (!(r < 1.0 - kInteriorMargin)) return false;
  return true;
}

double monomial_norm_sq(const DomainSpec& dom, const midx::MultiIndex& alpha) {
  if (alpha.dim() != dom.dimension())
    throw std::invalid_argument("monomial_norm_sq: index dimension mismatch");
  double lg = 0;
  int at = 0;
  for (int l : dom.blocks) {
    int deg = 0;
    for (int j = 0; j < l; ++j) {
      lg += std::lgamma(alpha.e[at + j] + 1.0);
      deg += alpha.e[at + j];
    }
    lg += std::lgamma(static_cast<double>(l)) - std::lgamma(static_cast<double>(l) + deg);
    at += l;
  }
  return std::exp(lg);
}

double monomial_norm(const DomainSpec& dom, const midx::MultiIndex& alpha) {
  return std::sqrt(monomial_norm_sq(dom, alpha));
}

Complex kernel_value(const DomainSpec& dom, const Point& a, const Point& z) {
  if (!is_interior(dom, a) || !is_interior(dom, z))
    throw std::invalid_argument("kernel_value: points must be interior");
  Complex out(1);
  int at = 0;
  for (int l : dom.blocks) {
    Complex ip(0);
    for (int j = 0; j < l; ++j) ip += z.z[at + j] * std::conj(a.z[at + j]);
    Complex factor = Complex(1) - ip;
    Complex pw(1);
    for (int j = 0; j < l; ++j) pw *= factor;
    out /= pw;
    at += l;
  }
  return out;
}

double kernel_norm_sq(const DomainSpec& dom, const Point& a) {
  return kernel_value(dom, a, a).real();
}

GramResult gram_kernels(const DomainSpec& dom, const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw std::invalid_argument("gram_kernels: empty point set");
  GramResult res;
  res.G.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      res.G(i, j) = kernel_value(dom, pts[j], pts[i]);
  for (int i = 0; i < n && !res.duplicate_points; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pts[i].z == pts[j].z) {
        res.duplicate_points = true;
        break;
      }
  return res;
}

Complex inner_product(const DomainSpec& dom, const series::TruncatedSeries& f,
                      const series::TruncatedSeries& g) {
  const int d = dom.dimension();
  if (f.dim != d || g.dim != d)
    throw std::invalid_argument("inner_product: dimension mismatch");
  const int cap = std::min(f.cap, g.cap);
  auto tab = midx::basis_for(d, cap);
  Complex acc(0);
  midx::MultiIndex alpha;
  alpha.e.assign(d, 0);
  for (std::size_t r = 0; r < tab->size(); ++r) {
    if (f.c[r] == Complex(0) || g.c[r] == Complex(0)) continue;
    const int* e = tab->exponents(r);
    alpha.e.assign(e, e + d);
    alpha.degree = tab->degree(r);
    acc += f.c[r] * std::conj(g.c[r]) * monomial_norm_sq(dom, alpha);
  }
  return acc;
}

}  // namespace capprox::hardy
