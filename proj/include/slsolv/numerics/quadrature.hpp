#pragma once

// Adaptive quadrature on finite intervals plus window-doubling evaluation of
// improper integrals with geometric tail extrapolation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace slsolv::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class QuadratureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod on a finite interval; absolute-error target.
template <typename F>
double integrate_finite(F&& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (!(a < b)) throw QuadratureError("integrate_finite: a > b");
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  const double scale = std::max(1.0, std::abs(b - a));
  double val = GK::integrate(f, a, b, 15, tol / scale, &err);
  if (!std::isfinite(val))
    throw QuadratureError("integrate_finite: non-finite result");
  return val;
}

/// Finite-interval quadrature with mandatory breakpoints (kernel kinks etc.).
template <typename F>
double integrate_finite_split(F&& f, double a, double b,
                              const std::vector<double>& breakpoints,
                              double tol) {
  if (a == b) return 0.0;
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  const double piece_tol = tol / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_finite(f, cuts[i], cuts[i + 1], piece_tol);
  return total;
}

enum class TailKind { Convergent, Divergent, Undetermined };

struct TailResult {
  TailKind kind = TailKind::Undetermined;
  double value = kNaN;  // includes the extrapolated tail bound when convergent
};

/// ∫_a^∞ f (dir=+1) or ∫_{-∞}^a f (dir=-1) for f ≥ 0 with monotone-ish tail.
/// Windows double in width; the remainder is bounded by a geometric estimate
/// once the window ratios settle below 1.
template <typename F>
TailResult integrate_tail(F&& f, double a, int dir, double tol,
                          int max_windows = 64) {
  double w = std::max(1.0, 0.5 * std::abs(a));
  double lo = a;
  double total = 0.0;
  double prev = -1.0;
  int growing = 0;
  std::vector<double> ratios;
  for (int k = 0; k < max_windows; ++k) {
    const double hi = lo + dir * w;
    const double x0 = std::min(lo, hi), x1 = std::max(lo, hi);
    const double inc = integrate_finite(f, x0, x1, tol / 8.0);
    if (!std::isfinite(inc)) return {TailKind::Divergent, kInf};
    total += inc;
    if (prev >= 0.0 && prev > 0.0) {
      const double r = inc / prev;
      ratios.push_back(r);
      if (r >= 1.0) {
        if (++growing >= 3) return {TailKind::Divergent, kInf};
      } else {
        growing = 0;
        // geometric remainder bound: inc * r / (1 - r), with headroom
        const double rbar = std::min(0.999, r * 1.1);
        const double rem = inc * rbar / (1.0 - rbar);
        if (rem < tol) return {TailKind::Convergent, total + rem};
      }
    } else if (prev == 0.0 && inc == 0.0) {
      return {TailKind::Convergent, total};
    }
    prev = inc;
    lo = hi;
    w *= 2.0;
  }
  return {TailKind::Undetermined, total};
}

/// Improper integral over a half line or the whole line; throws on divergence.
template <typename F>
double integrate_improper(F&& f, double a, double b, double tol,
                          const char* what = "integrand") {
  const bool lo_inf = std::isinf(a) && a < 0;
  const bool hi_inf = std::isinf(b) && b > 0;
  if (!lo_inf && !hi_inf) return integrate_finite(f, a, b, tol);
  double total = 0.0;
  double left = a, right = b;
  if (lo_inf) {
    const double cut = hi_inf ? 0.0 : std::min(0.0, b);
    auto t = integrate_tail(f, cut, -1, tol / 2.0);
    if (t.kind != TailKind::Convergent)
      throw QuadratureError(std::string("divergent left tail of ") + what);
    total += t.value;
    left = cut;
  }
  if (hi_inf) {
    const double cut = lo_inf ? 0.0 : std::max(0.0, a);
    auto t = integrate_tail(f, cut, +1, tol / 2.0);
    if (t.kind != TailKind::Convergent)
      throw QuadratureError(std::string("divergent right tail of ") + what);
    total += t.value;
    right = cut;
  }
  if (left < right) total += integrate_finite(f, left, right, tol);
  return total;
}

}  // namespace slsolv::num
