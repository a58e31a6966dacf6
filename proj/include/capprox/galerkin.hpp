#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "capprox/hardy.hpp"
#include "capprox/symbols.hpp"

namespace capprox::galerkin {

// Matrix of the compressed composition operator P_p C_phi P_p in the
// orthonormalized monomial basis: entry(beta, alpha) =
// coeff_beta(phi^alpha) * ||e_beta|| / ||e_alpha||, both indices in the
// graded enumeration order of degree <= p.
struct CompressionMatrix {
  hardy::DomainSpec dom;
  int degree = 0;
  Eigen::MatrixXcd entries;
};

struct AssembleOptions {
  int jobs = 1;
  // Basis-size guard: refuse count_upto(d, p) above this unless raised.
  std::size_t max_basis = 5000;
};

CompressionMatrix assemble(const sym::Symbol& phi, const hardy::DomainSpec& dom, int p,
                           const AssembleOptions& opts = {});

// Singular values, descending. These lower-estimate the approximation
// numbers of the full operator index by index.
std::vector<double> singular_values(const CompressionMatrix& M);

struct ApproxNumbers {
  int degree = 0;
  std::vector<double> values;
  // diagnostics against the degree p-2 run (empty when p < 2)
  int prev_degree = -1;
  std::vector<double> prev_values;
  bool interlacing_ok = true;        // values[n] >= prev[n] - 1e-12 * a_1
  double max_interlacing_violation = 0;
  std::size_t converged_count = 0;   // |a_n(p) - a_n(p-2)| < 1e-6 * a_1
};

ApproxNumbers approx_numbers(const sym::Symbol& phi, const hardy::DomainSpec& dom, int p,
                             const AssembleOptions& opts = {});

// Squared Frobenius norm of the compression (truncation at total degree p).
// Monotone non-decreasing in p.
double hs_norm_sq(const sym::Symbol& phi, const hardy::DomainSpec& dom, int p,
                  const AssembleOptions& opts = {});

// Same quantity under per-coordinate truncation (every exponent <= p, for
// columns and rows alike). For tensor-product symbols this factorizes
// exactly over the coordinates, which makes it the right object for
// validating the d-variate assembly against univariate runs.
double hs_norm_sq_box(const sym::Symbol& phi, const hardy::DomainSpec& dom, int p,
                      const AssembleOptions& opts = {});

// Norm ratio ||C_phi z1^n|| / ||z1^n|| on the bidisk for the coordinate-
// duplicating symbol (z1,z2) -> (z1,z1): 2^n / sqrt(binomial(2n,n)),
// computed in log space. Grows like (pi n)^{1/4}, witnessing that this
// composition operator is unbounded.
double unboundedness_witness(int n);

// Row-major (re,im) float64 pairs, little-endian regardless of host.
void write_matrix_binary(const CompressionMatrix& M, std::ostream& os);

}  // namespace capprox::galerkin
