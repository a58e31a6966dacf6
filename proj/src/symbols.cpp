#include "capprox/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "capprox/errors.hpp"

namespace capprox::sym {

namespace {

using hardy::DomainSpec;
using hardy::Point;
using series::TruncatedSeries;

hardy::Point random_interior_point(const DomainSpec& dom, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Point p;
  p.z.resize(dom.dimension());
  int at = 0;
  for (int l : dom.blocks) {
    double s = 0;
    for (int j = 0; j < l; ++j) {
      p.z[at + j] = Complex(gauss(rng), gauss(rng));
      s += std::norm(p.z[at + j]);
    }
    // radius by the volume law on a ball of real dimension 2l, pulled
    // slightly off the boundary
    const double r = 0.9999 * std::pow(unif(rng), 1.0 / (2 * l)) / std::sqrt(s);
    for (int j = 0; j < l; ++j) p.z[at + j] *= r;
    at += l;
  }
  return p;
}

Point shilov_sample(const DomainSpec& dom, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Point p;
  p.z.resize(dom.dimension());
  int at = 0;
  for (int l : dom.blocks) {
    double s = 0;
    for (int j = 0; j < l; ++j) {
      p.z[at + j] = Complex(gauss(rng), gauss(rng));
      s += std::norm(p.z[at + j]);
    }
    for (int j = 0; j < l; ++j) p.z[at + j] /= std::sqrt(s);
    at += l;
  }
  return p;
}

double gauge(const DomainSpec& dom, const Point& p) {
  double g = 0;
  for (double r : hardy::block_norms(dom, p)) g = std::max(g, r);
  return g;
}

Complex moebius_value(Complex w, Complex y) {
  return (w - y) / (Complex(1) - std::conj(w) * y);
}

Complex moebius_derivative(Complex w, Complex y) {
  const Complex den = Complex(1) - std::conj(w) * y;
  return (std::norm(w) - 1.0) / (den * den);
}

void check_self_map(const Symbol& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 1000; ++i) {
    const Point p = random_interior_point(s.domain(), rng);
    const Point q = eval(s, p);
    for (double r : hardy::block_norms(s.domain(), q))
      if (!(r < 1.0))
        throw std::invalid_argument(
            "symbol: sampled interior point maps outside the domain");
  }
}

}  // namespace

Symbol::Symbol(DomainSpec dom, std::shared_ptr<const Node> node)
    : dom_(std::move(dom)), node_(std::move(node)) {}

Symbol Symbol::lens(const DomainSpec& dom, std::vector<double> thetas, std::uint64_t seed) {
  if (static_cast<int>(thetas.size()) != dom.dimension())
    throw std::invalid_argument("lens: one theta per coordinate required");
  for (double t : thetas)
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument("lens: theta must lie in (0,1)");
  Symbol s(dom, std::make_shared<Node>(Node{LensNode{std::move(thetas)}}));
  check_self_map(s, seed);
  return s;
}

Symbol Symbol::diagonal(const DomainSpec& dom, std::vector<Complex> ratios, std::uint64_t seed) {
  if (static_cast<int>(ratios.size()) != dom.dimension())
    throw std::invalid_argument("diagonal: one ratio per coordinate required");
  for (Complex r : ratios)
    if (!(std::abs(r) <= 1.0))
      throw std::invalid_argument("diagonal: |ratio| must be <= 1");
  Symbol s(dom, std::make_shared<Node>(Node{DiagNode{std::move(ratios)}}));
  check_self_map(s, seed);
  return s;
}

Symbol Symbol::linear(const DomainSpec& dom, Eigen::MatrixXcd A, std::uint64_t seed) {
  const int d = dom.dimension();
  if (A.rows() != d || A.cols() != d)
    throw std::invalid_argument("linear: matrix must be d x d");
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5ull);
  for (int i = 0; i < 4096; ++i) {
    const Point z = shilov_sample(dom, rng);
    Point out;
    out.z.resize(d);
    Eigen::Map<const Eigen::VectorXcd> zv(z.z.data(), d);
    Eigen::VectorXcd img = A * zv;
    for (int j = 0; j < d; ++j) out.z[j] = img(j);
    if (!(gauge(dom, out) < 1.0))
      throw std::invalid_argument(
          "linear: sampled operator norm reaches 1; the map must be a strict contraction "
          "of the domain");
  }
  Symbol s(dom, std::make_shared<Node>(Node{LinearNode{std::move(A)}}));
  check_self_map(s, seed);
  return s;
}

Symbol Symbol::scale(double s, const Symbol& inner, std::uint64_t seed) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("scale: factor must lie in (0,1]");
  Symbol out(inner.domain(), std::make_shared<Node>(Node{ScaleNode{s, inner}}));
  check_self_map(out, seed);
  return out;
}

Symbol Symbol::compose(const Symbol& outer, const Symbol& inner, std::uint64_t seed) {
  if (!(outer.domain() == inner.domain()))
    throw std::invalid_argument("compose: domains must agree");
  Symbol out(inner.domain(), std::make_shared<Node>(Node{ComposeNode{outer, inner}}));
  check_self_map(out, seed);
  return out;
}

Symbol Symbol::duplicate(const DomainSpec& dom) {
  if (!(dom == DomainSpec::polydisk(2)))
    throw std::invalid_argument("duplicate: defined on the bidisk only");
  return Symbol(dom, std::make_shared<Node>(Node{DuplicateNode{}}));
}

Symbol Symbol::moebius_conjugate(const Symbol& phi, const hardy::Point& a, std::uint64_t seed) {
  const DomainSpec& dom = phi.domain();
  if (!dom.is_polydisk())
    throw std::invalid_argument("moebius_conjugate: polydisk domains only");
  if (!hardy::is_interior(dom, a))
    throw std::invalid_argument("moebius_conjugate: base point must be interior");
  const Point w = eval(phi, a);
  if (!hardy::is_interior(dom, w))
    throw std::invalid_argument("moebius_conjugate: phi(a) is not interior");
  Symbol out(dom, std::make_shared<Node>(Node{MoebiusNode{a, w, phi}}));
  check_self_map(out, seed);
  return out;
}

Complex lens_value(double theta, Complex z) {
  const Complex p = std::pow(Complex(1) + z, theta);
  const Complex q = std::pow(Complex(1) - z, theta);
  return (p - q) / (p + q);
}

Complex lens_derivative(double theta, Complex z) {
  const Complex p = std::pow(Complex(1) + z, theta);
  const Complex q = std::pow(Complex(1) - z, theta);
  const Complex pd = std::pow(Complex(1) + z, theta - 1.0);
  const Complex qd = std::pow(Complex(1) - z, theta - 1.0);
  const Complex den = (p + q) * (p + q);
  return 2.0 * theta * (pd * q + p * qd) / den;
}

series::TruncatedSeries lens_series_1d(double theta, int cap) {
  const TruncatedSeries plus = series::binomial_series(theta, 1, cap);
  const TruncatedSeries minus = series::binomial_series(theta, -1, cap);
  return series::div(series::sub(plus, minus), series::add(plus, minus));
}

Point eval(const Symbol& phi, const Point& z) {
  if (z.dim() != phi.dim()) throw std::invalid_argument("eval: point dimension mismatch");
  const int d = phi.dim();
  return std::visit(
      [&](const auto& n) -> Point {
        using T = std::decay_t<decltype(n)>;
        Point out;
        out.z.resize(d);
        if constexpr (std::is_same_v<T, LensNode>) {
          for (int j = 0; j < d; ++j) out.z[j] = lens_value(n.thetas[j], z.z[j]);
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          for (int j = 0; j < d; ++j) out.z[j] = n.ratios[j] * z.z[j];
        } else if constexpr (std::is_same_v<T, LinearNode>) {
          Eigen::Map<const Eigen::VectorXcd> zv(z.z.data(), d);
          Eigen::VectorXcd img = n.A * zv;
          for (int j = 0; j < d; ++j) out.z[j] = img(j);
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          out = eval(n.inner, z);
          for (auto& v : out.z) v *= n.s;
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          out = eval(n.outer, eval(n.inner, z));
        } else if constexpr (std::is_same_v<T, DuplicateNode>) {
          out.z[0] = z.z[0];
          out.z[1] = z.z[0];
        } else {  // MoebiusNode
          Point y;
          y.z.resize(d);
          for (int j = 0; j < d; ++j) y.z[j] = moebius_value(n.a.z[j], z.z[j]);
          y = eval(n.inner, y);
          for (int j = 0; j < d; ++j) out.z[j] = moebius_value(n.w.z[j], y.z[j]);
        }
        return out;
      },
      phi.node().v);
}

Eigen::MatrixXcd jacobian(const Symbol& phi, const Point& z) {
  if (z.dim() != phi.dim()) throw std::invalid_argument("jacobian: point dimension mismatch");
  const int d = phi.dim();
  using Mat = Eigen::MatrixXcd;
  return std::visit(
      [&](const auto& n) -> Mat {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LensNode>) {
          Mat J = Mat::Zero(d, d);
          for (int j = 0; j < d; ++j) J(j, j) = lens_derivative(n.thetas[j], z.z[j]);
          return J;
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          Mat J = Mat::Zero(d, d);
          for (int j = 0; j < d; ++j) J(j, j) = n.ratios[j];
          return J;
        } else if constexpr (std::is_same_v<T, LinearNode>) {
          return n.A;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return n.s * jacobian(n.inner, z);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          const Point mid = eval(n.inner, z);
          return jacobian(n.outer, mid) * jacobian(n.inner, z);
        } else if constexpr (std::is_same_v<T, DuplicateNode>) {
          Mat J = Mat::Zero(2, 2);
          J(0, 0) = 1;
          J(1, 0) = 1;
          return J;
        } else {  // MoebiusNode
          Point y;
          y.z.resize(d);
          Mat Ja = Mat::Zero(d, d);
          for (int j = 0; j < d; ++j) {
            y.z[j] = moebius_value(n.a.z[j], z.z[j]);
            Ja(j, j) = moebius_derivative(n.a.z[j], z.z[j]);
          }
          const Point img = eval(n.inner, y);
          Mat Jw = Mat::Zero(d, d);
          for (int j = 0; j < d; ++j) Jw(j, j) = moebius_derivative(n.w.z[j], img.z[j]);
          return Jw * jacobian(n.inner, y) * Ja;
        }
      },
      phi.node().v);
}

bool is_coordinatewise(const Symbol& phi) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LensNode> || std::is_same_v<T, DiagNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return is_coordinatewise(n.inner);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return is_coordinatewise(n.outer) && is_coordinatewise(n.inner);
        } else if constexpr (std::is_same_v<T, MoebiusNode>) {
          return is_coordinatewise(n.inner);
        } else {
          return false;  // Linear, Duplicate
        }
      },
      phi.node().v);
}

bool contains_duplicate(const Symbol& phi) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DuplicateNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, ScaleNode> || std::is_same_v<T, MoebiusNode>) {
          return contains_duplicate(n.inner);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return contains_duplicate(n.outer) || contains_duplicate(n.inner);
        } else {
          return false;
        }
      },
      phi.node().v);
}

std::vector<std::function<Complex(Complex)>> coordinate_functions(const Symbol& phi) {
  if (!is_coordinatewise(phi))
    throw std::invalid_argument("coordinate_functions: symbol is not coordinatewise");
  const int d = phi.dim();
  return std::visit(
      [&](const auto& n) -> std::vector<std::function<Complex(Complex)>> {
        using T = std::decay_t<decltype(n)>;
        std::vector<std::function<Complex(Complex)>> out(d);
        if constexpr (std::is_same_v<T, LensNode>) {
          for (int j = 0; j < d; ++j) {
            const double t = n.thetas[j];
            out[j] = [t](Complex z) { return lens_value(t, z); };
          }
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          for (int j = 0; j < d; ++j) {
            const Complex r = n.ratios[j];
            out[j] = [r](Complex z) { return r * z; };
          }
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          auto inner = coordinate_functions(n.inner);
          const double s = n.s;
          for (int j = 0; j < d; ++j) {
            auto f = inner[j];
            out[j] = [s, f](Complex z) { return s * f(z); };
          }
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          auto fo = coordinate_functions(n.outer);
          auto fi = coordinate_functions(n.inner);
          for (int j = 0; j < d; ++j) {
            auto o = fo[j];
            auto i = fi[j];
            out[j] = [o, i](Complex z) { return o(i(z)); };
          }
        } else if constexpr (std::is_same_v<T, MoebiusNode>) {
          auto fi = coordinate_functions(n.inner);
          for (int j = 0; j < d; ++j) {
            const Complex a = n.a.z[j], w = n.w.z[j];
            auto f = fi[j];
            out[j] = [a, w, f](Complex z) {
              return moebius_value(w, f(moebius_value(a, z)));
            };
          }
        }
        return out;
      },
      phi.node().v);
}

namespace {

// Taylor coefficients of a univariate holomorphic function bounded by 1,
// from samples on the circle of radius rho (trapezoid rule = discrete
// Cauchy integral). Aliasing is negligible for M >> cap; the price is a
// rho^{-k} noise amplification, capped at 1e4 by the choice of rho.
std::vector<Complex> cauchy_coeffs_1d(const std::function<Complex(Complex)>& g, int cap) {
  int M = 1024;
  while (M < 16 * (cap + 1)) M *= 2;
  const double rho = std::pow(10.0, -4.0 / std::max(cap, 1));
  std::vector<Complex> vals(M);
  for (int m = 0; m < M; ++m) {
    const double t = 2.0 * M_PI * m / M;
    vals[m] = g(rho * Complex(std::cos(t), std::sin(t)));
  }
  std::vector<Complex> out(cap + 1);
  for (int k = 0; k <= cap; ++k) {
    Complex acc(0);
    for (int m = 0; m < M; ++m) {
      const double t = -2.0 * M_PI * k * m / M;
      acc += vals[m] * Complex(std::cos(t), std::sin(t));
    }
    out[k] = acc / (static_cast<double>(M) * std::pow(rho, k));
  }
  return out;
}

bool has_exact_taylor(const Symbol& phi);

bool fixes_origin(const Symbol& phi) {
  Point zero;
  zero.z.assign(phi.dim(), Complex(0));
  const Point img = eval(phi, zero);
  double s = 0;
  for (Complex v : img.z) s += std::norm(v);
  return std::sqrt(s) <= 1e-14;
}

bool has_exact_taylor(const Symbol& phi) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ScaleNode>) {
          return has_exact_taylor(n.inner);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return is_coordinatewise(n.outer) && is_coordinatewise(n.inner) &&
                 has_exact_taylor(n.outer) && has_exact_taylor(n.inner) &&
                 fixes_origin(n.inner);
        } else if constexpr (std::is_same_v<T, MoebiusNode>) {
          return false;
        } else {
          return true;
        }
      },
      phi.node().v);
}

}  // namespace

std::vector<TruncatedSeries> taylor(const Symbol& phi, int cap) {
  const int d = phi.dim();
  return std::visit(
      [&](const auto& n) -> std::vector<TruncatedSeries> {
        using T = std::decay_t<decltype(n)>;
        std::vector<TruncatedSeries> out;
        if constexpr (std::is_same_v<T, LensNode>) {
          out.reserve(d);
          for (int j = 0; j < d; ++j)
            out.push_back(series::lift(lens_series_1d(n.thetas[j], cap).c, d, j, cap));
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          out.reserve(d);
          for (int j = 0; j < d; ++j)
            out.push_back(series::lift({Complex(0), n.ratios[j]}, d, j, cap));
        } else if constexpr (std::is_same_v<T, LinearNode>) {
          out.reserve(d);
          for (int j = 0; j < d; ++j) {
            TruncatedSeries s(d, cap);
            for (int k = 0; k < d; ++k) {
              if (n.A(j, k) == Complex(0)) continue;
              std::vector<int> e(d, 0);
              e[k] = 1;
              series::set_coeff(s, midx::MultiIndex(e), n.A(j, k));
            }
            out.push_back(std::move(s));
          }
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          out = taylor(n.inner, cap);
          for (auto& s : out) s = series::scale(s, Complex(n.s));
        } else if constexpr (std::is_same_v<T, DuplicateNode>) {
          TruncatedSeries z1 = series::lift({Complex(0), Complex(1)}, 2, 0, cap);
          out.push_back(z1);
          out.push_back(z1);
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          if (is_coordinatewise(n.outer) && is_coordinatewise(n.inner) &&
              has_exact_taylor(n.outer) && has_exact_taylor(n.inner) &&
              fixes_origin(n.inner)) {
            auto to = taylor(n.outer, cap);
            auto ti = taylor(n.inner, cap);
            out.reserve(d);
            for (int j = 0; j < d; ++j) {
              auto uo = series::as_univariate(to[j]);
              auto ui = series::as_univariate(ti[j]);
              TruncatedSeries o1(1, cap), i1(1, cap);
              o1.c = uo->second;
              i1.c = ui->second;
              out.push_back(series::lift(series::compose1d(o1, i1).c, d, j, cap));
            }
          } else if (is_coordinatewise(phi)) {
            auto fs = coordinate_functions(phi);
            out.reserve(d);
            for (int j = 0; j < d; ++j)
              out.push_back(series::lift(cauchy_coeffs_1d(fs[j], cap), d, j, cap));
          } else {
            throw std::invalid_argument(
                "taylor: composition is only supported for coordinatewise symbols");
          }
        } else {  // MoebiusNode
          if (!is_coordinatewise(n.inner))
            throw std::invalid_argument(
                "taylor: moebius conjugation of a non-coordinatewise symbol is not supported");
          auto fs = coordinate_functions(phi);
          out.reserve(d);
          for (int j = 0; j < d; ++j)
            out.push_back(series::lift(cauchy_coeffs_1d(fs[j], cap), d, j, cap));
        }
        return out;
      },
      phi.node().v);
}

SupNormEstimate sup_norm_estimate(const Symbol& phi, std::uint64_t seed) {
  return std::visit(
      [&](const auto& n) -> SupNormEstimate {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ScaleNode>) {
          SupNormEstimate inner = sup_norm_estimate(n.inner, seed);
          return {std::min(1.0, n.s * inner.value), inner.samples};
        } else {
          const int grid = 4096;
          if (phi.domain().is_polydisk() && is_coordinatewise(phi)) {
            auto fs = coordinate_functions(phi);
            double best = 0;
            for (auto& f : fs)
              for (int m = 0; m < grid; ++m) {
                const double t = 2.0 * M_PI * m / grid;
                best = std::max(best, std::abs(f(Complex(std::cos(t), std::sin(t)))));
              }
            return {best, static_cast<long>(grid) * phi.dim()};
          }
          std::mt19937_64 rng(seed ^ 0x517ull);
          double best = 0;
          for (int i = 0; i < grid; ++i) {
            const Point z = shilov_sample(phi.domain(), rng);
            best = std::max(best, gauge(phi.domain(), eval(phi, z)));
          }
          return {best, grid};
        }
      },
      phi.node().v);
}

Symbol moebius_fix_origin(const Symbol& phi, const hardy::Point& a, std::uint64_t seed) {
  Symbol psi = Symbol::moebius_conjugate(phi, a, seed);
  Point zero;
  zero.z.assign(phi.dim(), Complex(0));
  const Point img = eval(psi, zero);
  double s = 0;
  for (Complex v : img.z) s += std::norm(v);
  if (std::sqrt(s) > 1e-12)
    throw NumericError("moebius_fix_origin: conjugated symbol does not fix the origin");
  return psi;
}

JacobianAtZero jacobian_at_zero(const Symbol& phi) {
  Point zero;
  zero.z.assign(phi.dim(), Complex(0));
  const Point img = eval(phi, zero);
  double s = 0;
  for (Complex v : img.z) s += std::norm(v);
  if (std::sqrt(s) > 1e-12)
    throw std::invalid_argument(
        "jacobian_at_zero: symbol must fix the origin (conjugate it there first)");
  JacobianAtZero out;
  out.J = jacobian(phi, zero);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(out.J, false);
  if (es.info() != Eigen::Success)
    throw NumericError("jacobian_at_zero: eigensolver failed");
  out.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.J);
  out.truly_d_dimensional = svd.singularValues().minCoeff() > 1e-10;
  return out;
}

}  // namespace capprox::sym
