#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "capprox/decayfit.hpp"
#include "doctest.h"

using capprox::decay::DecayFit;
using capprox::decay::Window;

namespace {

std::vector<double> stretched(std::size_t n, double c, double nu) {
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::exp(-c * std::pow(double(i + 1), nu));
  return a;
}

}  // namespace

TEST_CASE("pure stretched exponential is recovered exactly") {
  const auto a = stretched(200, 2.0, 0.5);  // exp(-2 sqrt(n)), d = 2
  const auto fit = capprox::decay::gamma_estimate(a, 2);
  CHECK(fit.gamma_minus == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.gamma_plus == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.note.empty());
  // default window recorded: [100, 180]
  CHECK(fit.window.lo == 100);
  CHECK(fit.window.hi == 180);
}

TEST_CASE("a constant sequence has slope zero") {
  const std::vector<double> a(40, 0.5);
  const auto fit = capprox::decay::gamma_estimate(a, 1);
  CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-14));
  // the ratio envelope still varies (log 2 divided by a varying n)
  CHECK(fit.gamma_minus <= fit.gamma_plus);
  CHECK(fit.gamma_minus > 0.0);
}

TEST_CASE("stretch exponent on its defining examples") {
  CHECK(capprox::decay::stretch_exponent_fit(stretched(300, 1.0, 0.25)) ==
        doctest::Approx(0.25).epsilon(1e-6));
  CHECK(capprox::decay::stretch_exponent_fit(stretched(300, 3.0, 0.5)) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("slope is invariant under rescaling the sequence") {
  const auto a = stretched(150, 1.3, 1.0 / 3.0);
  const auto base = capprox::decay::gamma_estimate(a, 3);
  for (double kappa : {0.5, 2.0, 10.0}) {
    auto b = a;
    for (auto& v : b) v *= kappa;
    // keep values below 1 so no truncation note interferes
    if (kappa > 1)
      for (auto& v : b) v *= 1e-3;
    const auto fit = capprox::decay::gamma_estimate(b, 3);
    CHECK(std::abs(fit.slope - base.slope) < 1e-10);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(capprox::decay::gamma_estimate({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(capprox::decay::gamma_estimate(stretched(40, 1, 0.5), 0),
                  std::invalid_argument);
  // an increase well beyond the tolerance slack is rejected
  auto bad = stretched(40, 1.0, 0.5);
  bad[20] = bad[10];
  CHECK_THROWS_AS(capprox::decay::gamma_estimate(bad, 1), std::invalid_argument);
}

TEST_CASE("zeros truncate the usable range with a note") {
  auto a = stretched(60, 1.0, 0.5);
  for (std::size_t i = 40; i < a.size(); ++i) a[i] = 0.0;
  Window w{5, 40};
  const auto fit = capprox::decay::gamma_estimate(a, 1, w);
  CHECK(fit.note.find("zero") != std::string::npos);
  CHECK(fit.window.hi <= 40);
}

TEST_CASE("window handling") {
  const auto a = stretched(100, 2.0, 0.5);
  // explicit window recorded as given
  const auto fit = capprox::decay::gamma_estimate(a, 2, Window{10, 50});
  CHECK(fit.window.lo == 10);
  CHECK(fit.window.hi == 50);
  // hi beyond the sample clips
  const auto clipped = capprox::decay::gamma_estimate(a, 2, Window{10, 400});
  CHECK(clipped.window.hi == 100);
  // reversed and undersized windows are errors
  CHECK_THROWS_AS(capprox::decay::gamma_estimate(a, 2, Window{50, 10}), std::invalid_argument);
  CHECK_THROWS_AS(capprox::decay::gamma_estimate(a, 2, Window{10, 14}), std::invalid_argument);
  CHECK_THROWS_AS(capprox::decay::gamma_estimate(a, 2, Window{98, 400}), std::invalid_argument);
}

TEST_CASE("default window arithmetic") {
  const auto w = capprox::decay::default_window(200);
  CHECK(w.lo == 100);
  CHECK(w.hi == 180);
  const auto w2 = capprox::decay::default_window(20);
  CHECK(w2.lo == 10);
  CHECK(w2.hi == 18);
}

TEST_CASE("stretch fit trims leading values at or above one") {
  // 4 exp(-0.5 sqrt(n)) exceeds 1 for small n
  std::vector<double> a(200);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = 4.0 * std::exp(-0.5 * std::sqrt(double(i + 1)));
  std::string note;
  const double nu = capprox::decay::stretch_exponent_fit(a, Window{1, 200}, &note);
  CHECK(note.find("window") != std::string::npos);
  // the trimmed window starts where log(1/a_n) crosses zero, and the double
  // log diverges there, so the fitted exponent overshoots on purpose; only
  // the trimming mechanics are under test here (the clean-band cases above
  // pin the value)
  CHECK(std::isfinite(nu));
  CHECK(nu > 0.0);
}
