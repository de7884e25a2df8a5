#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "mgg/errors.hpp"

namespace mgg::detail {

/// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi).
/// Newton steps are taken when they stay inside the bracket, otherwise the
/// bracket is bisected.
template <class F, class DF>
double safeguarded_newton(F&& f, DF&& df, double lo, double hi, double ftol = 1e-14,
                          int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) throw BracketFailure("root not bracketed");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= ftol) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = x - fx / d;
    if (!(d > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      return next;
    }
    x = next;
  }
  return x;
}

/// Grows a bracket for an increasing function inside the open interval
/// (dom_lo, dom_hi); either bound may be infinite.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double dom_lo, double dom_hi, double start) {
  auto step_towards = [](double x, double bound, double& dist) {
    if (std::isinf(bound)) {
      dist *= 2.0;
      return bound > 0 ? x + dist : x - dist;
    }
    return x + 0.5 * (bound - x);
  };
  double lo = start;
  double dist = 1.0;
  for (int i = 0; f(lo) > 0.0; ++i) {
    if (i > 2000) throw BracketFailure("lower bracket not found");
    lo = step_towards(lo, dom_lo, dist);
  }
  double hi = start;
  dist = 1.0;
  for (int i = 0; f(hi) < 0.0; ++i) {
    if (i > 2000) throw BracketFailure("upper bracket not found");
    hi = step_towards(hi, dom_hi, dist);
  }
  return {lo, hi};
}

}  // namespace mgg::detail
