#include <complex>
#include <stdexcept>
#include <string>

#include "capprox/hardy.hpp"
#include "capprox/symbol_spec.hpp"
#include "capprox/symbols.hpp"
#include "doctest.h"

using namespace capprox;
using hardy::Point;
using sym::Complex;
using symspec::parse_symbol_json;

namespace {

Point eval_at(const symspec::ParsedSymbol& ps, std::vector<Complex> z) {
  return sym::eval(ps.symbol, Point{std::move(z)});
}

}  // namespace

TEST_CASE("lens: broadcast scalar theta and per-coordinate array") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "lens", "theta": 0.5}
  })");
  CHECK(ps.domain == hardy::DomainSpec::polydisk(2));
  const auto w = eval_at(ps, {Complex(0.3), Complex(-0.4)});
  CHECK(std::abs(w.z[0] - sym::lens_value(0.5, Complex(0.3))) < 1e-15);
  CHECK(std::abs(w.z[1] - sym::lens_value(0.5, Complex(-0.4))) < 1e-15);

  const auto pa = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "lens", "theta": [0.3, 0.8]}
  })");
  const auto v = eval_at(pa, {Complex(0.3), Complex(0.3)});
  CHECK(std::abs(v.z[0] - sym::lens_value(0.3, Complex(0.3))) < 1e-15);
  CHECK(std::abs(v.z[1] - sym::lens_value(0.8, Complex(0.3))) < 1e-15);
}

TEST_CASE("diag: a length-d array of numbers is per-coordinate") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "diag", "ratio": [0.5, 0.3]}
  })");
  const auto w = eval_at(ps, {Complex(0.1), Complex(0.1)});
  CHECK(std::abs(w.z[0] - Complex(0.05)) < 1e-16);
  CHECK(std::abs(w.z[1] - Complex(0.03)) < 1e-16);
}

TEST_CASE("diag: in dimension one a pair is a complex broadcast") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [1]},
    "symbol": {"type": "diag", "ratio": [0.3, 0.4]}
  })");
  const auto w = eval_at(ps, {Complex(0.2)});
  CHECK(std::abs(w.z[0] - Complex(0.06, 0.08)) < 1e-16);
}

TEST_CASE("linear accepts mixed real and [re, im] entries") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "linear", "matrix": [[[0, 0.5], 0.2], [0.1, 0.4]]}
  })");
  const auto w = eval_at(ps, {Complex(0.2), Complex(-0.1)});
  CHECK(std::abs(w.z[0] - (Complex(0, 0.5) * 0.2 + 0.2 * Complex(-0.1))) < 1e-15);
  CHECK(std::abs(w.z[1] - (0.1 * 0.2 + 0.4 * Complex(-0.1))) < 1e-15);
}

TEST_CASE("nested scale, compose, moebius, duplicate") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "scale", "s": 0.6,
               "inner": {"type": "compose",
                         "outer": {"type": "lens", "theta": 0.5},
                         "inner": {"type": "diag", "ratio": [0.5, 0.5]}}}
  })");
  const auto w = eval_at(ps, {Complex(0.4), Complex(-0.2)});
  CHECK(std::abs(w.z[0] - 0.6 * sym::lens_value(0.5, Complex(0.2))) < 1e-14);
  CHECK(std::abs(w.z[1] - 0.6 * sym::lens_value(0.5, Complex(-0.1))) < 1e-14);

  const auto pm = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "moebius", "a": [[0.4, 0], 0],
               "inner": {"type": "diag", "ratio": [0.5, 0.5]}}
  })");
  const auto at0 = eval_at(pm, {Complex(0), Complex(0)});
  CHECK(std::abs(at0.z[0]) < 1e-12);
  CHECK(std::abs(at0.z[1]) < 1e-12);

  const auto pd = parse_symbol_json(R"({
    "domain": {"blocks": [1, 1]},
    "symbol": {"type": "duplicate"}
  })");
  CHECK(sym::contains_duplicate(pd.symbol));
}

TEST_CASE("domain block structure is honored") {
  const auto ps = parse_symbol_json(R"({
    "domain": {"blocks": [3]},
    "symbol": {"type": "diag", "ratio": 0.5}
  })");
  CHECK(ps.domain == hardy::DomainSpec::ball(3));
  CHECK(ps.symbol.dim() == 3);
}

TEST_CASE("rejection paths carry the parser prefix") {
  auto expect_fail = [](const std::string& text, const char* needle) {
    try {
      parse_symbol_json(text);
      FAIL_CHECK("expected a parse failure for " << text);
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.rfind("symbol spec: ", 0) == 0);
      CHECK(msg.find(needle) != std::string::npos);
    }
  };
  expect_fail(R"({"domain": {"blocks": [1]}, "symbol": {"type": "frobnicate"}})",
              "unknown symbol type");
  expect_fail(R"({"domain": {"blocks": [1]}, "symbol": {"type": "lens", "thetas": [0.5]}})",
              "unknown field");
  expect_fail(R"({"symbol": {"type": "lens", "theta": 0.5}})", "missing \"domain\"");
  expect_fail(R"({"domain": {"blocks": []}, "symbol": {"type": "lens", "theta": 0.5}})",
              "nonempty");
  expect_fail(R"({"domain": {"blocks": [0]}, "symbol": {"type": "lens", "theta": 0.5}})",
              "positive");
  expect_fail(R"({"domain": {"blocks": [1, 1]},
                  "symbol": {"type": "linear", "matrix": [[0.5, 0.2], [0.1]]}})",
              "one entry per dimension");
  expect_fail("{\"domain\":", "parse error");
  expect_fail("[1, 2, 3]", "must be an object");
  expect_fail(R"({"domain": {"blocks": [1]}, "symbol": {"type": "lens", "theta": 0.5},
                  "extra": 1})",
              "unknown field");
}

TEST_CASE("constraint violations surface the symbol validation errors") {
  // well-formed JSON, but the ratio is too large for a self-map
  CHECK_THROWS_AS(parse_symbol_json(R"({
    "domain": {"blocks": [1]},
    "symbol": {"type": "diag", "ratio": 1.5}
  })"),
                  std::invalid_argument);
}

TEST_CASE("canonical form is idempotent and parseable") {
  const auto ps = parse_symbol_json(R"({
    "symbol": {"type": "scale", "s": 0.75,
               "inner": {"type": "lens", "theta": [0.4, 0.6]}},
    "domain": {"blocks": [1, 1]}
  })");
  const auto again = parse_symbol_json(ps.canonical);
  CHECK(again.canonical == ps.canonical);
  CHECK(again.domain == ps.domain);
}

TEST_CASE("loading from a missing file fails with the path in the message") {
  CHECK_THROWS_WITH_AS(symspec::load_symbol_file("/nonexistent/path/spec.json"),
                       doctest::Contains("cannot open"), std::invalid_argument);
}
