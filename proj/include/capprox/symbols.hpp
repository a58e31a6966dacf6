#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "capprox/hardy.hpp"
#include "capprox/powerseries.hpp"

namespace capprox::sym {

using Complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

struct Node;

// Holomorphic self-map of a product domain, built from a small closed
// algebra of generators. Construction validates dimensions and samples
// 1000 random interior points to check the map stays inside the domain
// (Duplicate is exempt: it is the designated unbounded example).
class Symbol {
 public:
  static Symbol lens(const hardy::DomainSpec& dom, std::vector<double> thetas,
                     std::uint64_t seed = kDefaultSeed);
  static Symbol diagonal(const hardy::DomainSpec& dom, std::vector<Complex> ratios,
                         std::uint64_t seed = kDefaultSeed);
  static Symbol linear(const hardy::DomainSpec& dom, Eigen::MatrixXcd A,
                       std::uint64_t seed = kDefaultSeed);
  static Symbol scale(double s, const Symbol& inner, std::uint64_t seed = kDefaultSeed);
  static Symbol compose(const Symbol& outer, const Symbol& inner,
                        std::uint64_t seed = kDefaultSeed);
  static Symbol duplicate(const hardy::DomainSpec& dom);
  // psi = Phi_{phi(a)} . phi . Phi_a with the coordinatewise disk
  // automorphisms Phi_w(z)_j = (w_j - z_j)/(1 - conj(w_j) z_j); fixes the
  // origin. Polydisk only.
  static Symbol moebius_conjugate(const Symbol& phi, const hardy::Point& a,
                                  std::uint64_t seed = kDefaultSeed);

  const hardy::DomainSpec& domain() const { return dom_; }
  int dim() const { return dom_.dimension(); }
  const Node& node() const { return *node_; }

 private:
  Symbol(hardy::DomainSpec dom, std::shared_ptr<const Node> node);
  hardy::DomainSpec dom_;
  std::shared_ptr<const Node> node_;
};

struct LensNode { std::vector<double> thetas; };
struct DiagNode { std::vector<Complex> ratios; };
struct LinearNode { Eigen::MatrixXcd A; };
struct ScaleNode { double s; Symbol inner; };
struct ComposeNode { Symbol outer; Symbol inner; };  // outer(inner(z))
struct DuplicateNode {};
struct MoebiusNode { hardy::Point a; hardy::Point w; Symbol inner; };

struct Node {
  std::variant<LensNode, DiagNode, LinearNode, ScaleNode, ComposeNode,
               DuplicateNode, MoebiusNode> v;
};

// Lens map value by the closed formula, principal branch powers.
Complex lens_value(double theta, Complex z);
Complex lens_derivative(double theta, Complex z);

// Univariate Taylor coefficients of the lens map: the quotient of the two
// binomial series. Odd function; linear coefficient theta.
series::TruncatedSeries lens_series_1d(double theta, int cap);

// Evaluation on the closed domain (formulas extend continuously there).
hardy::Point eval(const Symbol& phi, const hardy::Point& z);

// Complex Jacobian matrix at z, by the chain rule through the tree.
Eigen::MatrixXcd jacobian(const Symbol& phi, const hardy::Point& z);

// True when every coordinate function depends on its own coordinate only
// (tensor of univariate maps).
bool is_coordinatewise(const Symbol& phi);

bool contains_duplicate(const Symbol& phi);

// For coordinatewise symbols: the univariate coordinate functions.
std::vector<std::function<Complex(Complex)>> coordinate_functions(const Symbol& phi);

// Taylor coefficients of the d coordinate functions, truncated at cap.
// Exact series arithmetic where the tree allows it; coordinatewise trees
// that compose through a point other than the origin fall back to sampled
// Cauchy coefficients on a circle. Non-coordinatewise composition is not
// supported.
std::vector<series::TruncatedSeries> taylor(const Symbol& phi, int cap);

struct SupNormEstimate {
  double value = 0;   // lower estimate of sup_Omega gauge(phi(z))
  long samples = 0;
};

SupNormEstimate sup_norm_estimate(const Symbol& phi, std::uint64_t seed = kDefaultSeed);

// Conjugates phi so the result fixes the origin; reports the construction
// so downstream bounds can be attributed to phi's decay class.
Symbol moebius_fix_origin(const Symbol& phi, const hardy::Point& a,
                          std::uint64_t seed = kDefaultSeed);

struct JacobianAtZero {
  Eigen::MatrixXcd J;
  std::vector<Complex> eigenvalues;  // sorted by descending modulus
  bool truly_d_dimensional = false;  // smallest singular value > 1e-10
};

// Requires phi(0) = 0 within 1e-12.
JacobianAtZero jacobian_at_zero(const Symbol& phi);

}  // namespace capprox::sym
