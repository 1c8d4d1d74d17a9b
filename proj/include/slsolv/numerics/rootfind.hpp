#pragma once

#include <cmath>
#include <stdexcept>

namespace slsolv::num {

class BracketingFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Root of a continuous nondecreasing g with g(lo) ≤ 0 ≤ g(hi).
/// Stops when |g| ≤ tol_f or the bracket shrinks to tol_x.
template <typename G>
double bisect_monotone(G&& g, double lo, double hi, double tol_f,
                       double tol_x = 0.0, int max_iter = 200) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0)
    throw BracketingFailed("bisect_monotone: bracket does not straddle root");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= tol_f) return mid;
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol_x) break;
  }
  return 0.5 * (lo + hi);
}

/// Expands [0, s0] upward by doubling until g ≥ target; returns the bracket top.
template <typename G>
double expand_until(G&& g, double s0, double target, double cap,
                    int max_doublings = 200) {
  double s = s0;
  for (int i = 0; i < max_doublings; ++i) {
    if (g(s) >= target) return s;
    s *= 2.0;
    if (s > cap)
      throw BracketingFailed("expand_until: target not reached within domain");
  }
  throw BracketingFailed("expand_until: doubling limit exceeded");
}

}  // namespace slsolv::num
