#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "capprox/galerkin.hpp"
#include "capprox/hardy.hpp"
#include "capprox/multiindex.hpp"
#include "capprox/symbols.hpp"
#include "doctest.h"

using namespace capprox;
using galerkin::AssembleOptions;
using galerkin::CompressionMatrix;
using hardy::DomainSpec;
using hardy::Point;
using sym::Complex;
using sym::Symbol;

namespace {

// Dominant singular value by power iteration on M^H M. Deliberately avoids
// the SVD used by the library so the two routes are independent.
double power_iteration_sigma1(const Eigen::MatrixXcd& M, int iters = 2000) {
  const Eigen::MatrixXcd A = M.adjoint() * M;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(A.cols());
  v.normalize();
  double lambda = 0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = A * v;
    lambda = w.norm();
    if (lambda == 0) return 0;
    v = w / lambda;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_CASE("identity symbol compresses to the identity matrix") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto id = Symbol::diagonal(d2, {Complex(1), Complex(1)});
  const auto M = galerkin::assemble(id, d2, 3);
  const auto n = static_cast<Eigen::Index>(midx::count_upto(2, 3));
  REQUIRE(M.entries.rows() == n);
  REQUIRE(M.entries.cols() == n);
  CHECK((M.entries - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(galerkin::hs_norm_sq(id, d2, 3) == doctest::Approx(double(n)).epsilon(1e-14));
}

TEST_CASE("diagonal symbol: entries and singular values are the monomial ratios") {
  const auto d2 = DomainSpec::polydisk(2);
  const Complex r1(0.5), r2(0.25);
  const auto phi = Symbol::diagonal(d2, {r1, r2});
  const int p = 6;
  const auto M = galerkin::assemble(phi, d2, p);
  const auto basis = midx::enumerate_upto(2, p);

  std::vector<double> expect;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto& e = basis[a].e;
    const Complex want = std::pow(r1, e[0]) * std::pow(r2, e[1]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex got = M.entries(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
      if (b == a)
        CHECK(std::abs(got - want) < 1e-15);
      else
        CHECK(std::abs(got) == 0.0);
    }
    expect.push_back(std::abs(want));
  }

  auto sv = galerkin::singular_values(M);
  std::sort(expect.begin(), expect.end(), std::greater<double>());
  REQUIRE(sv.size() == expect.size());
  for (std::size_t i = 0; i < sv.size(); ++i)
    CHECK(sv[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("leading singular value agrees with an independent power iteration") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto phi = Symbol::lens(d2, {0.5, 0.7});
  const auto M = galerkin::assemble(phi, d2, 8);
  const auto sv = galerkin::singular_values(M);
  REQUIRE(!sv.empty());
  CHECK(std::abs(sv[0] - power_iteration_sigma1(M.entries)) < 1e-8);
}

TEST_CASE("compression acts on coefficient vectors as composition") {
  // Columns encode coeff_beta(phi^alpha) up to norm weights, so pushing a
  // polynomial's normalized coefficients through M and evaluating must equal
  // f(phi(a)) once the truncation error is negligible.
  const auto d1 = DomainSpec::polydisk(1);
  const auto phi = Symbol::scale(0.7, Symbol::lens(d1, {0.6}));
  const int p = 25;
  const auto M = galerkin::assemble(phi, d1, p);
  const auto basis = midx::enumerate_upto(1, p);

  series::TruncatedSeries f = series::zero(1, p);
  f.c[0] = Complex(0.3, 0.1);
  f.c[1] = Complex(-0.8);
  f.c[3] = Complex(0.45, -0.2);
  f.c[7] = Complex(0.05, 0.6);

  Eigen::VectorXcd fn(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t r = 0; r < basis.size(); ++r)
    fn(static_cast<Eigen::Index>(r)) = f.c[r] * hardy::monomial_norm(d1, basis[r]);
  const Eigen::VectorXcd gn = M.entries * fn;

  const Complex a(0.35, 0.1);
  Complex g_at_a(0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const double nr = hardy::monomial_norm(d1, basis[r]);
    g_at_a += (gn(static_cast<Eigen::Index>(r)) / nr) * std::pow(a, basis[r].e[0]);
  }
  const auto fa = eval(phi, Point{{a}});
  CHECK(std::abs(g_at_a - series::evaluate(f, {fa.z[0]})) < 1e-8);
}

TEST_CASE("approximation numbers interlace between consecutive truncations") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto phi = Symbol::lens(d2, {0.5, 0.5});
  const auto ap = galerkin::approx_numbers(phi, d2, 8);
  CHECK(ap.degree == 8);
  CHECK(ap.prev_degree == 6);
  CHECK(ap.interlacing_ok);
  CHECK(ap.max_interlacing_violation <= 1e-12 * ap.values[0]);
  REQUIRE(ap.prev_values.size() <= ap.values.size());
  for (std::size_t n = 0; n < ap.prev_values.size(); ++n)
    CHECK(ap.values[n] >= ap.prev_values[n] - 1e-12 * ap.values[0]);
  CHECK(ap.converged_count > 0);
  // descending order
  for (std::size_t n = 1; n < ap.values.size(); ++n) CHECK(ap.values[n] <= ap.values[n - 1]);
}

TEST_CASE("Frobenius norms against geometric series") {
  const auto d1 = DomainSpec::polydisk(1);
  const auto phi = Symbol::diagonal(d1, {Complex(0.5)});
  // sum_{k<=50} 0.25^k, the tail beyond the cap is ~1e-31
  CHECK(galerkin::hs_norm_sq(phi, d1, 50) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(galerkin::hs_norm_sq_box(phi, d1, 50) ==
        doctest::Approx(galerkin::hs_norm_sq(phi, d1, 50)).epsilon(1e-14));
}

TEST_CASE("box-truncated norm factorizes over tensor coordinates") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto d1 = DomainSpec::polydisk(1);
  const int p = 20;
  const auto phi2 = Symbol::scale(0.8, Symbol::lens(d2, {0.5, 0.5}));
  const auto phi1 = Symbol::scale(0.8, Symbol::lens(d1, {0.5}));
  const double box2 = galerkin::hs_norm_sq_box(phi2, d2, p);
  const double box1 = galerkin::hs_norm_sq_box(phi1, d1, p);
  CHECK(std::abs(box2 - box1 * box1) / (box1 * box1) < 1e-10);
  // total-degree truncation does not factorize; it is strictly smaller here
  CHECK(galerkin::hs_norm_sq(phi2, d2, p) < box2);
}

TEST_CASE("unboundedness witness for the duplicating symbol") {
  CHECK(galerkin::unboundedness_witness(1) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // 2^10 / sqrt(C(20,10)) with C(20,10) = 184756
  CHECK(galerkin::unboundedness_witness(10) ==
        doctest::Approx(1024.0 / std::sqrt(184756.0)).epsilon(1e-13));
  double prev = 0;
  for (int n = 1; n <= 50; ++n) {
    const double w = galerkin::unboundedness_witness(n);
    CHECK(w > prev);
    prev = w;
  }
  CHECK_THROWS_AS(galerkin::unboundedness_witness(0), std::invalid_argument);
}

TEST_CASE("assembly guards") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto dup = Symbol::duplicate(d2);
  CHECK_THROWS_WITH_AS(galerkin::assemble(dup, d2, 3),
                       doctest::Contains("unboundedness_witness"), std::invalid_argument);

  const auto phi = Symbol::lens(d2, {0.5, 0.5});
  AssembleOptions tight;
  tight.max_basis = 5;
  CHECK_THROWS_WITH_AS(galerkin::assemble(phi, d2, 4, tight),
                       doctest::Contains("max_basis"), std::invalid_argument);
  tight.max_basis = midx::count_upto(2, 4);
  CHECK_NOTHROW(galerkin::assemble(phi, d2, 4, tight));
}

TEST_CASE("binary matrix dump round-trips") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto phi = Symbol::lens(d2, {0.4, 0.8});
  const auto M = galerkin::assemble(phi, d2, 4);
  std::ostringstream os(std::ios::binary);
  galerkin::write_matrix_binary(M, os);
  const std::string bytes = os.str();
  const std::size_t rows = static_cast<std::size_t>(M.entries.rows());
  REQUIRE(bytes.size() == rows * rows * 16);

  auto read_f64le = [&](std::size_t off) {
    std::uint64_t u = 0;
    for (int b = 7; b >= 0; --b) u = (u << 8) | static_cast<unsigned char>(bytes[off + b]);
    double x;
    std::memcpy(&x, &u, 8);
    return x;
  };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) {
      const std::size_t off = (i * rows + j) * 16;
      const Complex v = M.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      CHECK(read_f64le(off) == v.real());
      CHECK(read_f64le(off + 8) == v.imag());
    }
}

TEST_CASE("parallel assembly is byte-identical to serial") {
  const auto d2 = DomainSpec::polydisk(2);
  const auto phi = Symbol::scale(0.9, Symbol::lens(d2, {0.45, 0.65}));
  AssembleOptions serial, parallel;
  parallel.jobs = 4;
  const auto A = galerkin::assemble(phi, d2, 7, serial);
  const auto B = galerkin::assemble(phi, d2, 7, parallel);
  REQUIRE(A.entries.rows() == B.entries.rows());
  CHECK((A.entries - B.entries).cwiseAbs().maxCoeff() == 0.0);
}
