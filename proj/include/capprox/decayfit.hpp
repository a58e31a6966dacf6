#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace capprox::decay {

// 1-based inclusive index range into a singular value sequence.
struct Window {
  std::size_t lo = 0, hi = 0;
  bool unset() const { return lo == 0 && hi == 0; }
};

// Last half of the sample, with the top 10% of indices dropped (values
// nearest the truncation edge are the most biased ones).
Window default_window(std::size_t sample_size);

struct DecayFit {
  double gamma_minus = 0;  // min of log(1/a_n) / n^{1/d} over the window
  double gamma_plus = 0;   // max of the same
  double slope = 0;        // least-squares slope of log(1/a_n) against n^{1/d}
  double residual = 0;     // RMS residual of that fit
  std::optional<double> nu;  // stretch exponent, when fitted separately
  Window window;
  std::string note;
};

// Fits the stretched-exponential profile log(1/a_n) ~ gamma n^{1/d}.
// Input must be positive and non-increasing; zeros truncate the usable
// range (noted), non-monotone input is an error.
DecayFit gamma_estimate(const std::vector<double>& a, int d, Window w = {});

// Least-squares slope of log log(1/a_n) against log n: the exponent nu in
// a_n ~ exp(-c n^nu) (the intercept absorbs c). Window entries with
// a_n >= 1 are dropped from the left with a note.
double stretch_exponent_fit(const std::vector<double>& a, Window w = {},
                            std::string* note = nullptr);

}  // namespace capprox::decay
