#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "capprox/multiindex.hpp"
#include "capprox/powerseries.hpp"

namespace capprox::hardy {

using Complex = std::complex<double>;

// Product domain: one factor per block, block k a unit ball of complex
// dimension blocks[k]. All blocks of size 1 means the polydisk.
struct DomainSpec {
  std::vector<int> blocks;

  int dimension() const;
  bool is_polydisk() const;
  static DomainSpec polydisk(int d);
  static DomainSpec ball(int d);
  bool operator==(const DomainSpec& o) const { return blocks == o.blocks; }
};

struct Point {
  std::vector<Complex> z;
  int dim() const { return static_cast<int>(z.size()); }
};

// Euclidean norm of each block of the point.
std::vector<double> block_norms(const DomainSpec& dom, const Point& p);

// Every block norm < 1 - 1e-12; points closer to the boundary than that
// are treated as boundary.
bool is_interior(const DomainSpec& dom, const Point& p);

// ||z^alpha||^2 on H^2 of the domain: per block of size l with
// sub-exponent beta, the factor is (l-1)! beta! / (l-1+|beta|)!.
// Evaluated through lgamma so large degrees stay finite; exactly 1 on
// polydisks.
double monomial_norm_sq(const DomainSpec& dom, const midx::MultiIndex& alpha);
double monomial_norm(const DomainSpec& dom, const midx::MultiIndex& alpha);

// Reproducing kernel K_a(z) = prod_k (1 - <z_k, a_k>)^{-l_k}.
// Both points must be interior.
Complex kernel_value(const DomainSpec& dom, const Point& a, const Point& z);

// ||K_a||^2 = K_a(a).
double kernel_norm_sq(const DomainSpec& dom, const Point& a);

struct GramResult {
  Eigen::MatrixXcd G;       // G(i,j) = kernel_value(dom, pts[j], pts[i])
  bool duplicate_points = false;  // G singular by construction if true
};

GramResult gram_kernels(const DomainSpec& dom, const std::vector<Point>& pts);

// <f, g> for truncated series, with the monomial weights of the domain.
Complex inner_product(const DomainSpec& dom, const series::TruncatedSeries& f,
                      const series::TruncatedSeries& g);

}  // namespace capprox::hardy
