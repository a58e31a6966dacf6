#include "capprox/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "capprox/certificates.hpp"
#include "capprox/decayfit.hpp"
#include "capprox/errors.hpp"
#include "capprox/galerkin.hpp"
#include "capprox/multiindex.hpp"
#include "capprox/symbol_spec.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace capprox::cli {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + p.string());
  out << text;
  if (!out) throw std::invalid_argument("write failed for " + p.string());
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p = dir.empty() ? "." : dir;
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw std::invalid_argument("cannot create output directory " + p.string());
  return p;
}

struct CommonOpts {
  std::string symbol_path;
  int degree = 0;
  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t seed = sym::kDefaultSeed;
  std::size_t max_basis = 5000;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool degree_required = true) {
  cmd->add_option("--symbol", o.symbol_path, "symbol spec JSON path")->required();
  auto* deg = cmd->add_option("--degree", o.degree, "truncation degree p");
  if (degree_required) deg->required();
  cmd->add_option("--out", o.out_dir, "output directory (default .)");
  cmd->add_option("--jobs", o.jobs, "parallel columns during assembly")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("--seed", o.seed, "seed for construction-time sampling");
  cmd->add_option("--max-basis", o.max_basis, "basis size guard for count_upto(d,p)");
}

galerkin::AssembleOptions assemble_opts(const CommonOpts& o) {
  galerkin::AssembleOptions ao;
  ao.jobs = o.jobs;
  ao.max_basis = o.max_basis;
  return ao;
}

// ---------------------------------------------------------------- singvals

struct SingOpts : CommonOpts {
  std::string dump_matrix;  // path prefix; empty = no dump
};

int cmd_singvals(const SingOpts& o) {
  const fs::path out = prepare_out_dir(o.out_dir);
  const auto ps = symspec::load_symbol_file(o.symbol_path, o.seed);
  const auto ao = assemble_opts(o);
  const auto ap = galerkin::approx_numbers(ps.symbol, ps.domain, o.degree, ao);

  std::string csv = "n,a_n\n";
  for (std::size_t i = 0; i < ap.values.size(); ++i)
    csv += std::to_string(i + 1) + "," + fmt17(ap.values[i]) + "\n";
  write_file(out / "singvals.csv", csv);

  std::cerr << "singvals: " << ap.values.size() << " values at degree " << ap.degree << "\n";
  if (ap.prev_degree >= 0) {
    std::cerr << "interlacing vs degree " << ap.prev_degree << ": "
              << (ap.interlacing_ok ? "ok" : "VIOLATED") << ", max violation "
              << fmt17(ap.max_interlacing_violation) << ", converged " << ap.converged_count
              << "/" << ap.prev_values.size() << "\n";
  }

  if (!o.dump_matrix.empty()) {
    const auto M = galerkin::assemble(ps.symbol, ps.domain, o.degree, ao);
    std::ofstream bin(o.dump_matrix + ".bin", std::ios::binary);
    if (!bin) throw std::invalid_argument("cannot write " + o.dump_matrix + ".bin");
    galerkin::write_matrix_binary(M, bin);
    json header;
    header["d"] = ps.domain.dimension();
    header["p"] = o.degree;
    header["blocks"] = ps.domain.blocks;
    header["symbol"] = json::parse(ps.canonical)["symbol"];
    write_file(o.dump_matrix + ".json", header.dump() + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------ bounds

struct BoundOpts : CommonOpts {
  std::string certificates = "weyl,kernel,tail";
  double grid_sigma = 1.0;
  int grid_n = 3;
  std::size_t nmax = 15;
  double sup_norm = -1;  // < 0 means "estimate it"
  double a1_upper = -1;  // < 0 means "use compressed a1"
};

std::set<std::string> parse_certificates(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "weyl" && item != "kernel" && item != "tail")
      throw std::invalid_argument("unknown certificate \"" + item +
                                  "\" (choices: weyl, kernel, tail)");
    out.insert(item);
  }
  if (out.empty()) throw std::invalid_argument("--certificates selects nothing");
  return out;
}

int cmd_bounds(const BoundOpts& o) {
  const fs::path out = prepare_out_dir(o.out_dir);
  const auto ps = symspec::load_symbol_file(o.symbol_path, o.seed);
  const auto toggles = parse_certificates(o.certificates);
  const int d = ps.domain.dimension();
  const auto ao = assemble_opts(o);

  json prov;
  prov["symbol"] = json::parse(ps.canonical);
  prov["degree"] = o.degree;
  std::vector<std::string> notes;

  // The spectral certificate needs the origin fixed. On a polydisk a
  // symbol that moves 0 is replaced by its origin-fixed conjugate, and the
  // whole report then describes that conjugate: the two operators share
  // the decay class, not individual a_n, and mixing rows from the two
  // would break the lower <= upper cross-check.
  sym::Symbol phi = ps.symbol;
  bool conjugated = false;
  bool origin_fixed = true;
  {
    hardy::Point zero{std::vector<hardy::Complex>(d, 0.0)};
    const auto c0 = sym::eval(ps.symbol, zero);
    double m = 0;
    for (const auto& c : c0.z) m = std::max(m, std::abs(c));
    if (m > 1e-12) {
      origin_fixed = false;
      if (toggles.count("weyl") && ps.domain.is_polydisk()) {
        phi = sym::moebius_fix_origin(ps.symbol, zero, o.seed);
        conjugated = true;
        origin_fixed = true;
        notes.push_back(
            "symbol moves the origin; all rows describe the origin-fixed conjugate, "
            "which shares the decay class of the input symbol");
      }
    }
  }
  prov["conjugated"] = conjugated;

  const auto ap = galerkin::approx_numbers(phi, ps.domain, o.degree, ao);
  const std::vector<double>& a = ap.values;
  const std::size_t nmax = std::min<std::size_t>(o.nmax, a.size());

  cert::BoundReport rep;
  rep.rows.resize(nmax);
  for (std::size_t n = 1; n <= nmax; ++n) {
    rep.rows[n - 1].n = n;
    rep.rows[n - 1].compressed = a[n - 1];
  }

  if (toggles.count("weyl")) {
    if (!origin_fixed) {
      prov["weyl"] = {{"skipped",
                       "symbol does not fix the origin and the domain has a block of "
                       "dimension > 1; conjugation is only available on polydisks"}};
    } else {
      const auto jz = sym::jacobian_at_zero(phi);
      if (!jz.truly_d_dimensional) {
        prov["weyl"] = {{"skipped",
                         "Jacobian at 0 is numerically singular; the eigenvalue-product "
                         "spectrum needs an invertible derivative"}};
      } else {
        const double a1 = o.a1_upper > 0 ? o.a1_upper : a[0];
        prov["a1"] = {
            {"value", a1},
            {"source", o.a1_upper > 0
                           ? "user-supplied upper bound"
                           : "compressed top singular value; a lower estimate of the true "
                             "a1, so the weyl quotient leans high until --a1-upper is given"}};
        int q = 0;
        while (midx::count_upto(d, q) < 2 * nmax) ++q;
        const auto spectrum = cert::clahane_spectrum(jz.eigenvalues, q);
        for (std::size_t n = 1; n <= nmax; ++n)
          if (2 * n <= spectrum.size())
            rep.rows[n - 1].lower_weyl = cert::weyl_lower_bound(spectrum, a1, n);
        prov["weyl"] = {{"spectrum_degree", q}, {"spectrum_size", spectrum.size()}};
      }
    }
  }

  if (toggles.count("kernel")) {
    json grids = json::array();
    for (int j = 1; j <= o.grid_n; ++j) {
      std::size_t N = 1;
      for (int k = 0; k < d; ++k) N *= static_cast<std::size_t>(j);
      if (N > nmax) break;
      const auto pts = cert::lens_grid(o.grid_sigma, j, d);
      bool interior = true;
      for (const auto& pt : pts) interior = interior && hardy::is_interior(ps.domain, pt);
      if (!interior) {
        notes.push_back("kernel grid with " + std::to_string(j) +
                        " points per axis leaves the domain; shrink --grid-sigma");
        break;
      }
      try {
        const auto kr = cert::kernel_bernstein_lower(phi, ps.domain, pts);
        rep.rows[N - 1].lower_kernel = kr.bound;
        grids.push_back({{"per_axis", j}, {"points", N}, {"gram_condition", kr.gram_condition}});
      } catch (const std::invalid_argument& e) {
        notes.push_back(std::string("kernel grid ") + std::to_string(j) + ": " + e.what());
        break;
      }
    }
    prov["kernel"] = {{"sigma", o.grid_sigma}, {"grids", grids}};
  }

  if (toggles.count("tail")) {
    double r = o.sup_norm;
    std::string source = "user override";
    if (r < 0) {
      const auto est = sym::sup_norm_estimate(phi, o.seed);
      r = est.value;
      source = "sampled lower estimate (" + std::to_string(est.samples) +
               " samples); supply --sup-norm with a rigorous bound for full certification";
    }
    if (r >= 1.0) {
      prov["tail"] = {{"skipped", "sup-norm is 1 within sampling accuracy; the tail bound "
                                  "needs ||phi||_inf < 1"},
                      {"r", r}};
    } else {
      for (std::size_t n = 1; n <= nmax; ++n)
        if (const auto t = cert::tail_upper_for_index(ps.domain, r, n))
          rep.rows[n - 1].upper_tail = *t;
      prov["tail"] = {{"r", r}, {"source", source}};
    }
  }

  cert::validate(rep);  // throws SoundnessError on any lower > upper

  notes.push_back(
      "kernel bound is the smallest generalized eigenvalue of the kernel-subspace "
      "pencil: an exact finite-dimensional min-max quantity, not a closed-form "
      "interpolation inequality");
  prov["notes"] = notes;
  prov["interlacing"] = {{"ok", ap.interlacing_ok},
                         {"max_violation", ap.max_interlacing_violation},
                         {"converged", ap.converged_count}};

  write_file(out / "bounds.csv", cert::to_csv(rep));
  write_file(out / "bounds_provenance.json", prov.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------- decay

struct DecayOpts : CommonOpts {
  std::string input;  // CSV path; empty = compute from the symbol
  int dim = 0;        // with --input; 0 = take 1
  std::size_t window_lo = 0, window_hi = 0;
};

std::vector<double> read_singvals_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<double> a;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    const std::string field = line.substr(comma + 1);
    try {
      std::size_t pos = 0;
      const double v = std::stod(field, &pos);
      a.push_back(v);
    } catch (const std::exception&) {
      // header or junk row; skip
    }
  }
  if (a.empty()) throw std::invalid_argument("no numeric rows in " + path);
  return a;
}

int cmd_decay(const DecayOpts& o, bool have_symbol) {
  const fs::path out = prepare_out_dir(o.out_dir);
  std::vector<double> a;
  int d = 0;
  if (!o.input.empty()) {
    a = read_singvals_csv(o.input);
    d = o.dim > 0 ? o.dim : 1;
  } else {
    if (!have_symbol)
      throw std::invalid_argument("decay needs --input or --symbol with --degree");
    const auto ps = symspec::load_symbol_file(o.symbol_path, o.seed);
    const auto ap = galerkin::approx_numbers(ps.symbol, ps.domain, o.degree, assemble_opts(o));
    a = ap.values;
    d = o.dim > 0 ? o.dim : ps.domain.dimension();
  }

  decay::Window w;
  w.lo = o.window_lo;
  w.hi = o.window_hi;
  auto fit = decay::gamma_estimate(a, d, w);
  std::string stretch_note;
  try {
    fit.nu = decay::stretch_exponent_fit(a, w, &stretch_note);
  } catch (const std::invalid_argument& e) {
    stretch_note = e.what();
  }
  if (!stretch_note.empty()) {
    if (!fit.note.empty()) fit.note += "; ";
    fit.note += stretch_note;
  }

  json rep;
  rep["gamma_minus"] = fit.gamma_minus;
  rep["gamma_plus"] = fit.gamma_plus;
  rep["slope"] = fit.slope;
  rep["residual"] = fit.residual;
  if (fit.nu)
    rep["nu"] = *fit.nu;
  else
    rep["nu"] = nullptr;
  rep["window"] = {{"lo", fit.window.lo}, {"hi", fit.window.hi}};
  rep["dimension"] = d;
  rep["note"] = fit.note;
  write_file(out / "decay.json", rep.dump(2) + "\n");
  return 0;
}

// ----------------------------------------------------------------- witness

int cmd_witness(int nmax, const std::string& out_dir) {
  const fs::path out = prepare_out_dir(out_dir);
  std::string csv = "n,ratio\n";
  for (int n = 1; n <= nmax; ++n)
    csv += std::to_string(n) + "," + fmt17(galerkin::unboundedness_witness(n)) + "\n";
  write_file(out / "witness.csv", csv);
  return 0;
}

std::string error_json(const char* kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"composition operators on Hardy spaces: compressions, singular values, "
               "decay certificates"};
  app.require_subcommand(1);

  SingOpts so;
  auto* sing = app.add_subcommand("singvals", "compressed singular values to singvals.csv");
  add_common(sing, so);
  sing->add_option("--dump-matrix", so.dump_matrix,
                   "also write the compression matrix to <prefix>.bin/.json");

  BoundOpts bo;
  auto* bounds = app.add_subcommand("bounds", "two-sided certificates to bounds.csv");
  add_common(bounds, bo);
  bounds->add_option("--certificates", bo.certificates, "comma list of weyl,kernel,tail");
  bounds->add_option("--grid-sigma", bo.grid_sigma, "kernel grid spacing sigma > 0")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--grid-n", bo.grid_n, "kernel grid max points per axis")
      ->check(CLI::Range(1, 64));
  bounds->add_option("--nmax", bo.nmax, "report rows n = 1..nmax");
  bounds->add_option("--sup-norm", bo.sup_norm, "override the sup-norm estimate for the tail");
  bounds->add_option("--a1-upper", bo.a1_upper, "rigorous upper bound for a1 (weyl)");

  DecayOpts dopt;
  auto* dec = app.add_subcommand("decay", "decay exponents to decay.json");
  dec->add_option("--symbol", dopt.symbol_path, "symbol spec JSON path");
  dec->add_option("--degree", dopt.degree, "truncation degree p");
  dec->add_option("--input", dopt.input, "existing singular value CSV (n,a_n)");
  dec->add_option("--dim", dopt.dim, "dimension d for n^{1/d} (default: domain's, or 1)");
  dec->add_option("--out", dopt.out_dir, "output directory (default .)");
  dec->add_option("--jobs", dopt.jobs, "parallel columns during assembly")
      ->check(CLI::Range(1, 4096));
  dec->add_option("--seed", dopt.seed, "seed for construction-time sampling");
  dec->add_option("--max-basis", dopt.max_basis, "basis size guard");
  dec->add_option("--window-lo", dopt.window_lo, "fit window start (1-based)");
  dec->add_option("--window-hi", dopt.window_hi, "fit window end (inclusive)");

  int wit_nmax = 100;
  std::string wit_out = ".";
  auto* wit = app.add_subcommand("witness", "unbounded-example norm ratios to witness.csv");
  wit->add_option("--nmax", wit_nmax, "rows n = 1..nmax")->check(CLI::Range(1, 100000));
  wit->add_option("--out", wit_out, "output directory (default .)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()) << "\n";
    return 1;
  }

  try {
    if (sing->parsed()) return cmd_singvals(so);
    if (bounds->parsed()) {
      if (bo.degree < 1) throw std::invalid_argument("bounds needs --degree >= 1");
      return cmd_bounds(bo);
    }
    if (dec->parsed()) {
      const bool have_symbol = !dopt.symbol_path.empty();
      if (have_symbol && dopt.degree < 1)
        throw std::invalid_argument("decay with --symbol needs --degree >= 1");
      return cmd_decay(dopt, have_symbol);
    }
    if (wit->parsed()) return cmd_witness(wit_nmax, wit_out);
    throw std::invalid_argument("no subcommand selected");
  } catch (const SoundnessError& e) {
    std::cout << error_json("soundness", e.what()) << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cout << error_json("numeric", e.what()) << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cout << error_json("config", e.what()) << "\n";
    return 1;
  } catch (const std::overflow_error& e) {
    std::cout << error_json("numeric", e.what()) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cout << error_json("internal", e.what()) << "\n";
    return 3;
  }
}

}  // namespace capprox::cli
