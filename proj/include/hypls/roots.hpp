#pragma once

// Bracketed one-dimensional root finders used to invert monotone functions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hypls::roots {

struct Result {
  double x;
  int iterations;
  bool converged;
};

/// Newton's method on an increasing function inside a known bracket
/// [lo, hi] with f(lo) <= 0 <= f(hi). A step that leaves the bracket, or three
/// consecutive steps that fail to halve |f|, trigger a bisection step instead.
/// `f_df` returns (f(x), f'(x)).
template <class FDf>
Result safeguarded_newton(FDf&& f_df, double lo, double hi, double x0, double rel_tol = 4e-16,
                          int max_iter = 200) {
  double x = std::clamp(x0, lo, hi);
  double last_abs = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 1; it <= max_iter; ++it) {
    const auto [fx, dfx] = f_df(x);
    if (fx == 0.0) return {x, it, true};
    if (fx < 0.0) lo = x; else hi = x;
    const double afx = std::abs(fx);
    stalled = afx > 0.5 * last_abs ? stalled + 1 : 0;
    last_abs = afx;
    double next = x - fx / dfx;
    // A Newton step below the resolution of x means x is already the root.
    if (std::abs(next - x) <= rel_tol * std::max(std::abs(x), std::numeric_limits<double>::min())) {
      return {next, it, true};
    }
    const bool outside = !(next > lo && next < hi) || !std::isfinite(next);
    if (outside || stalled >= 3) {
      next = 0.5 * (lo + hi);
      stalled = 0;
    }
    const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
    if (std::abs(next - x) <= rel_tol * scale || hi - lo <= rel_tol * std::abs(hi)) {
      return {next, it, true};
    }
    x = next;
  }
  return {x, max_iter, false};
}

/// Illinois (modified regula falsi) on a bracket with a sign change.
template <class F>
Result illinois(F&& f, double a, double b, double fa, double fb, double rel_tol = 4e-16,
                int max_iter = 200) {
  if (fa == 0.0) return {a, 0, true};
  if (fb == 0.0) return {b, 0, true};
  if ((fa > 0.0) == (fb > 0.0)) throw std::invalid_argument("illinois: root not bracketed");
  int side = 0;
  for (int it = 1; it <= max_iter; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double fc = f(c);
    if (fc == 0.0) return {c, it, true};
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b)) + 1e-300) {
      return {0.5 * (a + b), it, true};
    }
  }
  return {0.5 * (a + b), max_iter, false};
}

/// Golden-section search for a maximum (sign = +1) or minimum (sign = -1) of
/// a unimodal function on [a, b].
template <class F>
double golden_extremum(F&& f, double a, double b, double sign, double rel_tol = 1e-13) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  for (int it = 0; it < 200 && std::abs(b - a) > rel_tol * (std::abs(a) + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = sign * f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace hypls::roots
