#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capprox/hardy.hpp"
#include "capprox/symbols.hpp"

namespace capprox::cert {

using Complex = std::complex<double>;

// Moduli of the products mu^alpha over |alpha| <= p, sorted descending.
// These are the moduli of the point spectrum of the operator induced by a
// truly d-dimensional symbol fixing the origin with phi'(0) eigenvalues mu.
// Rejects any mu_j = 0 (that would contradict the truly-d-dimensional
// hypothesis the spectrum formula needs).
std::vector<double> clahane_spectrum(const std::vector<Complex>& mu, int p);

// |lambda_{2n}|^2 / a1 <= a_n, from the pairing of eigenvalue products
// with singular values. a1 must upper-bound the operator norm for the
// quotient to be fully certified; a compressed top singular value is only
// a lower estimate of it, which the caller must flag.
double weyl_lower_bound(const std::vector<double>& spectrum_moduli, double a1, std::size_t n);

struct KernelLowerResult {
  double bound = 0;           // <= a_N of the full operator, N = pts.size()
  double gram_condition = 0;  // spectral condition number of the base Gram matrix
  std::size_t points = 0;
};

// min-max over the span of the kernels at pts: the smallest generalized
// eigenvalue of (G_v, G_u) with v_j = phi(u_j) equals
// min ||C_phi^* f||^2 / ||f||^2 over that N-dimensional subspace, so its
// square root lower-bounds a_N. Conditioning of G_u above 1e12 is refused.
KernelLowerResult kernel_bernstein_lower(const sym::Symbol& phi, const hardy::DomainSpec& dom,
                                         const std::vector<hardy::Point>& pts);

// Real grid (1 - e^{-j1 sigma}, ..., 1 - e^{-jd sigma}), j_k in 1..n,
// n^d points, last coordinate fastest.
std::vector<hardy::Point> lens_grid(double sigma, int n, int d);

// Interpolation constant on n-th roots of unity scaled to radius r: r^{1-n}.
double roots_of_unity_interp_constant(double r, int n);
double product_bound(double ma, double mb);

// sqrt(sum_{k>n} w(k) r^{2k}) where w(k) sums prod_i (k_i+1)^{l_i-1} over
// the splits of k across the blocks; on a polydisk w(k) is the number of
// compositions of k into d parts. Bounds a_{N_n + 1} from above whenever
// r = ||phi||_inf < 1 (the H^2 norm of a tail is at most its sup norm).
double truncation_tail_upper(const hardy::DomainSpec& dom, double r, int n);

// Largest degree m with count_upto(d, m) + 1 <= n gives an upper bound
// valid at index n by monotonicity; nullopt when no degree applies (n <= 1).
std::optional<double> tail_upper_for_index(const hardy::DomainSpec& dom, double r,
                                           std::size_t n);

struct BoundRow {
  std::size_t n = 0;
  double compressed = 0;
  std::optional<double> lower_weyl;
  std::optional<double> lower_kernel;
  std::optional<double> upper_tail;
  std::string flags;
};

struct BoundReport {
  std::vector<BoundRow> rows;
};

// Cross-checks lower vs upper bounds row by row; throws SoundnessError on
// any contradiction. Compressed values below the SVD noise floor
// (1e-14 * a1) are skipped for the compressed-vs-upper comparison and
// flagged instead.
void validate(BoundReport& report);

// Columns: n,compressed,lower_weyl,lower_kernel,upper_tail,flags.
// 17 significant digits, LF line ends, blanks for absent bounds.
std::string to_csv(const BoundReport& report);

}  // namespace capprox::cert
