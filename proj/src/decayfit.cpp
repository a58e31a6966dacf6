#include "capprox/decayfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace capprox::decay {

namespace {

// usable prefix length: strictly positive values, monotonicity enforced
std::size_t usable_length(const std::vector<double>& a, std::string* note) {
  if (a.empty()) throw std::invalid_argument("decay fit: empty sequence");
  const double slack = 1e-12 * a[0];
  std::size_t n = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0)) {
      n = i;
      if (note && note->empty()) *note = "zero values truncate the sequence at n=" + std::to_string(i);
      break;
    }
    if (i > 0 && a[i] > a[i - 1] + slack)
      throw std::invalid_argument("decay fit: sequence is not non-increasing at n=" +
                                  std::to_string(i + 1));
  }
  if (n == 0) throw std::invalid_argument("decay fit: no positive values");
  return n;
}

Window clip_window(Window w, std::size_t len) {
  if (w.unset()) w = default_window(len);
  if (w.lo < 1 || w.hi < w.lo)
    throw std::invalid_argument("decay fit: bad window");
  w.hi = std::min<std::size_t>(w.hi, len);
  if (w.lo > w.hi) throw std::invalid_argument("decay fit: window is empty after truncation");
  if (w.hi - w.lo + 1 < 8)
    throw std::invalid_argument("decay fit: window has fewer than 8 points");
  return w;
}

struct LineFit {
  double slope = 0, intercept = 0, rms = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  LineFit f;
  if (n == 1) {
    f.intercept = y[0];
    return f;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0) {
    f.intercept = sy / n;
    return f;
  }
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

Window default_window(std::size_t sample_size) {
  if (sample_size == 0) return {};
  Window w;
  w.lo = std::max<std::size_t>(1, sample_size / 2);
  w.hi = std::max(w.lo, (9 * sample_size) / 10);
  return w;
}

DecayFit gamma_estimate(const std::vector<double>& a, int d, Window w) {
  if (d < 1) throw std::invalid_argument("gamma_estimate: d must be >= 1");
  DecayFit out;
  const std::size_t len = usable_length(a, &out.note);
  out.window = clip_window(w, len);

  std::vector<double> x, y;
  x.reserve(out.window.hi - out.window.lo + 1);
  y.reserve(x.capacity());
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (std::size_t n = out.window.lo; n <= out.window.hi; ++n) {
    const double xr = std::pow(static_cast<double>(n), 1.0 / d);
    const double yr = std::log(1.0 / a[n - 1]);
    x.push_back(xr);
    y.push_back(yr);
    const double s = yr / xr;
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  out.gamma_minus = mn;
  out.gamma_plus = mx;
  const LineFit f = least_squares(x, y);
  out.slope = f.slope;
  out.residual = f.rms;
  return out;
}

double stretch_exponent_fit(const std::vector<double>& a, Window w, std::string* note) {
  std::string local;
  const std::size_t len = usable_length(a, &local);
  Window win = clip_window(w, len);
  // the double log needs a_n < 1; monotonicity means offenders sit at the left edge
  while (win.lo <= win.hi && !(a[win.lo - 1] < 1.0)) ++win.lo;
  if (win.lo > win.hi)
    throw std::invalid_argument("stretch_exponent_fit: no window entries with a_n < 1");
  if (note) {
    *note = local;
    if (win.lo != (w.unset() ? default_window(len).lo : std::max<std::size_t>(w.lo, 1))) {
      if (!note->empty()) *note += "; ";
      *note += "window shrunk to [" + std::to_string(win.lo) + "," + std::to_string(win.hi) +
               "]: leading values >= 1";
    }
  }
  std::vector<double> x, y;
  x.reserve(win.hi - win.lo + 1);
  y.reserve(x.capacity());
  for (std::size_t n = win.lo; n <= win.hi; ++n) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(std::log(1.0 / a[n - 1])));
  }
  return least_squares(x, y).slope;
}

}  // namespace capprox::decay
