#include "capprox/galerkin.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "capprox/errors.hpp"

namespace capprox::galerkin {

namespace {

using hardy::DomainSpec;
using series::TruncatedSeries;

std::vector<double> monomial_norms(const DomainSpec& dom, const midx::BasisTable& tab) {
  std::vector<double> out(tab.size());
  midx::MultiIndex alpha;
  const int d = tab.dim();
  for (std::size_t r = 0; r < tab.size(); ++r) {
    const int* e = tab.exponents(r);
    alpha.e.assign(e, e + d);
    alpha.degree = tab.degree(r);
    out[r] = hardy::monomial_norm(dom, alpha);
  }
  return out;
}

void check_symbol_domain(const sym::Symbol& phi, const DomainSpec& dom, int p,
                         const AssembleOptions& opts, const char* who) {
  if (!(phi.domain() == dom))
    throw std::invalid_argument(std::string(who) + ": symbol was built for a different domain");
  if (p < 1) throw std::invalid_argument(std::string(who) + ": truncation degree must be >= 1");
  if (sym::contains_duplicate(phi))
    throw std::invalid_argument(
        std::string(who) +
        ": the coordinate-duplicating symbol induces an unbounded operator; "
        "see unboundedness_witness");
  const std::uint64_t n = midx::count_upto(dom.dimension(), p);
  if (n > opts.max_basis)
    throw std::invalid_argument(
        std::string(who) + ": basis size " + std::to_string(n) +
        " exceeds the guard (" + std::to_string(opts.max_basis) + "); raise max_basis");
}

void run_jobs(int jobs, std::size_t count, const std::function<void(std::size_t)>& work) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next(0);
  std::vector<std::thread> pool;
  const int k = std::min<std::size_t>(jobs, count);
  pool.reserve(k);
  for (int t = 0; t < k; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

CompressionMatrix assemble(const sym::Symbol& phi, const DomainSpec& dom, int p,
                           const AssembleOptions& opts) {
  check_symbol_domain(phi, dom, p, opts, "assemble");
  const int d = dom.dimension();
  auto tab = midx::basis_for(d, p);
  const std::size_t n = tab->size();
  const std::vector<double> norm = monomial_norms(dom, *tab);
  const series::PowerCache cache(sym::taylor(phi, p), p, p);

  CompressionMatrix M;
  M.dom = dom;
  M.degree = p;
  M.entries.resize(n, n);

  run_jobs(opts.jobs, n, [&](std::size_t ic) {
    midx::MultiIndex alpha;
    const int* e = tab->exponents(ic);
    alpha.e.assign(e, e + d);
    alpha.degree = tab->degree(ic);
    const TruncatedSeries col = cache.power(alpha);
    for (std::size_t r = 0; r < n; ++r)
      M.entries(r, ic) = col.c[r] * (norm[r] / norm[ic]);
  });

  if (!M.entries.allFinite())
    throw NumericError("assemble: non-finite entries in the compression matrix");
  return M;
}

std::vector<double> singular_values(const CompressionMatrix& M) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M.entries);
  if (svd.info() != Eigen::Success)
    throw NumericError("singular_values: SVD did not converge");
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

ApproxNumbers approx_numbers(const sym::Symbol& phi, const DomainSpec& dom, int p,
                             const AssembleOptions& opts) {
  ApproxNumbers out;
  out.degree = p;
  out.values = singular_values(assemble(phi, dom, p, opts));
  if (p >= 2) {
    out.prev_degree = p - 2;
    if (p - 2 >= 1) {
      out.prev_values = singular_values(assemble(phi, dom, p - 2, opts));
    } else {
      out.prev_values = {1.0};  // degree-0 compression of a unital column is the 1x1 identity
    }
    const double a1 = out.values.empty() ? 0.0 : out.values[0];
    for (std::size_t i = 0; i < out.prev_values.size(); ++i) {
      const double gap = out.prev_values[i] - out.values[i];
      out.max_interlacing_violation = std::max(out.max_interlacing_violation, gap);
      if (std::abs(gap) < 1e-6 * a1) ++out.converged_count;
    }
    out.interlacing_ok = out.max_interlacing_violation <= 1e-12 * a1;
  }
  return out;
}

double hs_norm_sq(const sym::Symbol& phi, const DomainSpec& dom, int p,
                  const AssembleOptions& opts) {
  return assemble(phi, dom, p, opts).entries.squaredNorm();
}

double hs_norm_sq_box(const sym::Symbol& phi, const DomainSpec& dom, int p,
                      const AssembleOptions& opts) {
  AssembleOptions guard = opts;
  // the box [0,p]^d sits inside total degree d*p; same guard applied to
  // the number of box columns
  const int d = dom.dimension();
  std::uint64_t ncols = 1;
  for (int j = 0; j < d; ++j) {
    ncols *= static_cast<std::uint64_t>(p) + 1;
    if (ncols > guard.max_basis)
      throw std::invalid_argument("hs_norm_sq_box: box size exceeds the guard; raise max_basis");
  }
  check_symbol_domain(phi, dom, 1, guard, "hs_norm_sq_box");

  const int cap = d * p;  // products of box columns never exceed this, so
                          // every in-box coefficient below is exact
  auto tab = midx::basis_for(d, cap);
  const std::vector<double> norm = monomial_norms(dom, *tab);
  std::vector<double> normsq(norm.size());
  for (std::size_t i = 0; i < norm.size(); ++i) normsq[i] = norm[i] * norm[i];
  const auto factors = sym::taylor(phi, cap);
  const series::PowerCache cache(factors, cap, p);

  // one task per leading exponent; each walks the remaining coordinates
  // depth-first, multiplying one factor at a time
  std::vector<double> partial(static_cast<std::size_t>(p) + 1, 0.0);
  run_jobs(opts.jobs, static_cast<std::size_t>(p) + 1, [&](std::size_t a0) {
    std::vector<int> e(d, 0);
    e[0] = static_cast<int>(a0);
    TruncatedSeries base = cache.power(midx::MultiIndex(e));
    double acc = 0;
    std::vector<int> alpha(d, 0);
    alpha[0] = static_cast<int>(a0);

    std::function<void(int, const TruncatedSeries&)> rec =
        [&](int j, const TruncatedSeries& cur) {
          if (j == d) {
            const double asq = normsq[tab->rank_of(alpha.data())];
            double colsum = 0;
            for (std::size_t r = 0; r < cur.size(); ++r) {
              if (cur.c[r] == series::Complex(0)) continue;
              const int* be = tab->exponents(r);
              bool inbox = true;
              for (int t = 0; t < d; ++t)
                if (be[t] > p) { inbox = false; break; }
              if (inbox) colsum += std::norm(cur.c[r]) * normsq[r];
            }
            acc += colsum / asq;
            return;
          }
          TruncatedSeries walk = cur;
          for (int a = 0; a <= p; ++a) {
            alpha[j] = a;
            if (a > 0) walk = series::mul(walk, factors[j]);
            rec(j + 1, walk);
          }
          alpha[j] = 0;
        };
    rec(1, base);
    partial[a0] = acc;
  });

  double total = 0;
  for (double v : partial) total += v;
  if (!std::isfinite(total)) throw NumericError("hs_norm_sq_box: non-finite sum");
  return total;
}

double unboundedness_witness(int n) {
  if (n < 1) throw std::invalid_argument("unboundedness_witness: n must be >= 1");
  const double lg = n * std::log(2.0) -
                    0.5 * (std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0));
  return std::exp(lg);
}

void write_matrix_binary(const CompressionMatrix& M, std::ostream& os) {
  auto put = [&os](double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
  };
  for (Eigen::Index r = 0; r < M.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < M.entries.cols(); ++c) {
      put(M.entries(r, c).real());
      put(M.entries(r, c).imag());
    }
}

}  // namespace capprox::galerkin
