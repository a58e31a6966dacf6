#include "capprox/certificates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "capprox/errors.hpp"
#include "capprox/multiindex.hpp"

namespace capprox::cert {

std::vector<double> clahane_spectrum(const std::vector<Complex>& mu, int p) {
  const int d = static_cast<int>(mu.size());
  if (d < 1) throw std::invalid_argument("clahane_spectrum: empty eigenvalue list");
  if (p < 0) throw std::invalid_argument("clahane_spectrum: p must be >= 0");
  std::vector<double> logs(d);
  for (int j = 0; j < d; ++j) {
    const double m = std::abs(mu[j]);
    if (m == 0.0)
      throw std::invalid_argument(
          "clahane_spectrum: a zero eigenvalue of phi'(0) contradicts the "
          "truly d-dimensional hypothesis");
    logs[j] = std::log(m);
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(midx::count_upto(d, p)));
  midx::for_each_upto(d, p, [&](const midx::MultiIndex& a) {
    double lg = 0;
    for (int j = 0; j < d; ++j) lg += a.e[j] * logs[j];
    out.push_back(std::exp(lg));
  });
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

double weyl_lower_bound(const std::vector<double>& spectrum_moduli, double a1, std::size_t n) {
  if (n < 1) throw std::invalid_argument("weyl_lower_bound: n must be >= 1");
  if (!(a1 > 0)) throw std::invalid_argument("weyl_lower_bound: a1 must be positive");
  if (2 * n > spectrum_moduli.size())
    throw std::invalid_argument("weyl_lower_bound: spectrum too short for index 2n");
  const double l2n = spectrum_moduli[2 * n - 1];
  return l2n * l2n / a1;
}

KernelLowerResult kernel_bernstein_lower(const sym::Symbol& phi, const hardy::DomainSpec& dom,
                                         const std::vector<hardy::Point>& pts) {
  if (!(phi.domain() == dom))
    throw std::invalid_argument("kernel_bernstein_lower: symbol/domain mismatch");
  if (pts.empty()) throw std::invalid_argument("kernel_bernstein_lower: empty point set");

  const hardy::GramResult gu = hardy::gram_kernels(dom, pts);
  if (gu.duplicate_points)
    throw std::invalid_argument("kernel_bernstein_lower: points must be pairwise distinct");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> base(gu.G);
  if (base.info() != Eigen::Success)
    throw NumericError("kernel_bernstein_lower: eigensolver failed on the Gram matrix");
  const double lmin = base.eigenvalues().minCoeff();
  const double lmax = base.eigenvalues().maxCoeff();
  const double cond = lmin > 0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12))
    throw std::invalid_argument(
        "kernel_bernstein_lower: Gram matrix condition exceeds 1e12; spread the points "
        "or use fewer of them");

  std::vector<hardy::Point> imgs;
  imgs.reserve(pts.size());
  for (const auto& u : pts) imgs.push_back(sym::eval(phi, u));
  const hardy::GramResult gv = hardy::gram_kernels(dom, imgs);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(gv.G, gu.G);
  if (ges.info() != Eigen::Success)
    throw NumericError("kernel_bernstein_lower: generalized eigensolver failed");
  const double ev = std::max(0.0, ges.eigenvalues().minCoeff());

  KernelLowerResult out;
  out.bound = std::sqrt(ev);
  out.gram_condition = cond;
  out.points = pts.size();
  return out;
}

std::vector<hardy::Point> lens_grid(double sigma, int n, int d) {
  if (!(sigma > 0)) throw std::invalid_argument("lens_grid: sigma must be positive");
  if (n < 1 || d < 1) throw std::invalid_argument("lens_grid: n and d must be >= 1");
  std::vector<double> axis(n);
  for (int j = 0; j < n; ++j) axis[j] = 1.0 - std::exp(-(j + 1) * sigma);
  std::vector<hardy::Point> out;
  std::vector<int> idx(d, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(n, d));
  out.reserve(total);
  for (;;) {
    hardy::Point p;
    p.z.resize(d);
    for (int j = 0; j < d; ++j) p.z[j] = axis[idx[j]];
    out.push_back(std::move(p));
    int j = d - 1;
    while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

double roots_of_unity_interp_constant(double r, int n) {
  if (!(r > 0 && r < 1)) throw std::invalid_argument("interp_constant: r must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("interp_constant: n must be >= 1");
  return std::pow(r, 1 - n);
}

double product_bound(double ma, double mb) {
  if (!(ma > 0) || !(mb > 0)) throw std::invalid_argument("product_bound: constants must be positive");
  return ma * mb;
}

namespace {

// w(k) = sum over splits of k across blocks of prod (k_i + 1)^{l_i - 1}
class TailWeights {
 public:
  explicit TailWeights(const std::vector<int>& blocks) : blocks_(blocks) {
    if (blocks_.size() == 1) single_ = true;
    poly_ = true;
    for (int l : blocks_)
      if (l != 1) poly_ = false;
  }

  double operator()(int k) {
    if (poly_) {
      // number of compositions of k into d parts
      double v = 1;
      const int d = static_cast<int>(blocks_.size());
      for (int i = 1; i < d; ++i) v *= static_cast<double>(k + i) / i;
      return v;
    }
    if (single_) return std::pow(k + 1.0, blocks_[0] - 1.0);
    extend(k);
    return table_[k];
  }

 private:
  void extend(int k) {
    if (static_cast<int>(table_.size()) > k) return;
    const int hi = std::max<int>(k, 2 * static_cast<int>(table_.size()) + 16);
    // DP over blocks: conv of the sequences (t+1)^{l-1}
    std::vector<double> acc(hi + 1, 0.0);
    acc[0] = 1.0;
    for (int l : blocks_) {
      std::vector<double> next(hi + 1, 0.0);
      for (int i = 0; i <= hi; ++i) {
        if (acc[i] == 0.0) continue;
        for (int t = 0; i + t <= hi; ++t)
          next[i + t] += acc[i] * std::pow(t + 1.0, l - 1.0);
      }
      acc.swap(next);
    }
    table_ = std::move(acc);
  }

  std::vector<int> blocks_;
  bool single_ = false, poly_ = false;
  std::vector<double> table_;
};

}  // namespace

double truncation_tail_upper(const hardy::DomainSpec& dom, double r, int n) {
  if (!(r >= 0 && r < 1))
    throw std::invalid_argument(
        "truncation_tail_upper: needs sup norm r < 1; the bound does not apply");
  if (n < 0) throw std::invalid_argument("truncation_tail_upper: n must be >= 0");
  if (r == 0) return 0;
  TailWeights w(dom.blocks);
  const double q = r * r;
  double sum = 0;
  double qk = std::pow(q, n + 1);
  for (int k = n + 1;; ++k) {
    const double term = w(k) * qk;
    sum += term;
    if (term < 1e-18 * sum && k > n + 8) break;
    if (k > (1 << 22))
      throw NumericError("truncation_tail_upper: tail sum failed to converge");
    qk *= q;
  }
  return std::sqrt(sum);
}

std::optional<double> tail_upper_for_index(const hardy::DomainSpec& dom, double r,
                                           std::size_t n) {
  const int d = dom.dimension();
  if (n < 2) return std::nullopt;  // count_upto(d, 0) + 1 == 2 is the first reachable index
  int m = 0;
  while (midx::count_upto(d, m + 1) + 1 <= n) ++m;
  return truncation_tail_upper(dom, r, m);
}

void validate(BoundReport& report) {
  double a1 = 0;
  for (const auto& row : report.rows) a1 = std::max(a1, row.compressed);
  const double floor = 1e-14 * a1;
  const double slack = 1e-12 * a1;
  for (auto& row : report.rows) {
    const auto check = [&](double lo, const char* who) {
      if (row.upper_tail && lo > *row.upper_tail + slack)
        throw SoundnessError("bound contradiction at n=" + std::to_string(row.n) + ": " +
                             who + " lower bound " + std::to_string(lo) +
                             " exceeds tail upper bound " + std::to_string(*row.upper_tail));
    };
    if (row.lower_weyl) check(*row.lower_weyl, "weyl");
    if (row.lower_kernel) check(*row.lower_kernel, "kernel");
    if (row.compressed >= floor) {
      check(row.compressed, "compressed");
    } else if (row.upper_tail) {
      if (!row.flags.empty()) row.flags += ";";
      row.flags += "compressed-below-svd-floor";
    }
  }
}

std::string to_csv(const BoundReport& report) {
  std::string out = "n,compressed,lower_weyl,lower_kernel,upper_tail,flags\n";
  char buf[64];
  const auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& row : report.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += fmt(row.compressed);
    out += ',';
    if (row.lower_weyl) out += fmt(*row.lower_weyl);
    out += ',';
    if (row.lower_kernel) out += fmt(*row.lower_kernel);
    out += ',';
    if (row.upper_tail) out += fmt(*row.upper_tail);
    out += ',';
    out += row.flags;
    out += '\n';
  }
  return out;
}

}  // namespace capprox::cert
