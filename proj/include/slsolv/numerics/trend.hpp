#pragma once

// Expanding-grid estimation of suprema/infima over the real line.
//
// Genuine sups over ℝ cannot be decided from finitely many samples; the shared
// desk rule is: evaluate on [-2^k, 2^k] for growing k, classify "finite" when
// the running extremum changes < 0.5% across two consecutive doublings,
// "diverging" when it moves monotonically by > 5% across three doublings,
// and "undetermined" otherwise.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace slsolv::num {

enum class Trend { Finite, Diverging, Undetermined };

struct ScanOptions {
  int k_min = 2;
  int k_max = 11;            // outermost radius 2^k_max
  int pts_per_octave = 8;    // per side, log-spaced
  int base_pts = 33;         // linear grid on [-2^k_min, 2^k_min]
  double domain_cap = 1e300; // clamp sample radius (evaluation trust region)
  double stabilize_rel = 0.005;
  double grow_rel = 0.05;
};

struct ScanResult {
  Trend kind = Trend::Undetermined;
  double value = 0.0;     // running extremum at the end of the scan
  double arg = 0.0;       // where it was attained
  double exponent = 0.0;  // fitted growth exponent when diverging
  double last_rel_change = 0.0;
  std::vector<std::pair<double, double>> per_doubling;  // (radius, extremum)
};

namespace detail {

inline double fit_exponent(const std::vector<std::pair<double, double>>& hist,
                           int tail_points) {
  // least squares slope of log(extremum) vs log(radius) over the last points
  int n = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int start =
      std::max(0, static_cast<int>(hist.size()) - tail_points);
  for (int i = start; i < static_cast<int>(hist.size()); ++i) {
    if (!(hist[i].second > 0.0)) continue;
    const double lx = std::log(hist[i].first);
    const double ly = std::log(hist[i].second);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

template <typename F>
void scan_points(F&& f, const std::vector<double>& xs, bool want_sup,
                 double& best, double& arg) {
  for (double x : xs) {
    const double y = f(x);
    if (!std::isfinite(y)) continue;  // outside the evaluable region
    if ((want_sup && y > best) || (!want_sup && y < best)) {
      best = y;
      arg = x;
    }
  }
}

}  // namespace detail

/// Running sup (want_sup) or inf of f over expanding symmetric grids.
template <typename F>
ScanResult extremum_scan(F&& f, bool want_sup, const ScanOptions& opt = {}) {
  ScanResult res;
  double best = want_sup ? -1e308 : 1e308;
  double arg = 0.0;

  const double r0 = std::ldexp(1.0, opt.k_min);
  std::vector<double> base;
  for (int i = 0; i < opt.base_pts; ++i)
    base.push_back(-r0 + 2.0 * r0 * i / (opt.base_pts - 1));
  detail::scan_points(f, base, want_sup, best, arg);
  res.per_doubling.emplace_back(r0, best);

  for (int k = opt.k_min + 1; k <= opt.k_max; ++k) {
    const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
    if (lo > opt.domain_cap) break;
    std::vector<double> ring;
    const double step = std::pow(hi / lo, 1.0 / opt.pts_per_octave);
    for (int i = 1; i <= opt.pts_per_octave; ++i) {
      const double x = std::min(lo * std::pow(step, i), opt.domain_cap);
      ring.push_back(x);
      ring.push_back(-x);
    }
    detail::scan_points(f, ring, want_sup, best, arg);
    res.per_doubling.emplace_back(std::min(hi, opt.domain_cap), best);
  }

  res.value = best;
  res.arg = arg;

  const auto& h = res.per_doubling;
  const int n = static_cast<int>(h.size());
  auto rel = [&](int i) {
    const double a = h[i - 1].second, b = h[i].second;
    if (a == 0.0) return b == 0.0 ? 0.0 : 1e308;
    return std::abs(b - a) / std::abs(a);
  };
  if (n >= 3) {
    res.last_rel_change = rel(n - 1);
    const bool stable = rel(n - 1) < opt.stabilize_rel &&
                        rel(n - 2) < opt.stabilize_rel;
    bool growing = n >= 4;
    for (int i = n - 3; i <= n - 1 && growing; ++i) {
      const bool moved_out = want_sup ? h[i].second > h[i - 1].second
                                      : h[i].second < h[i - 1].second;
      growing = moved_out && rel(i) > opt.grow_rel;
    }
    if (stable)
      res.kind = Trend::Finite;
    else if (growing) {
      res.kind = Trend::Diverging;
      res.exponent = detail::fit_exponent(h, 5);
    }
  }
  return res;
}

template <typename F>
ScanResult sup_scan(F&& f, const ScanOptions& opt = {}) {
  return extremum_scan(std::forward<F>(f), true, opt);
}

template <typename F>
ScanResult inf_scan(F&& f, const ScanOptions& opt = {}) {
  return extremum_scan(std::forward<F>(f), false, opt);
}

}  // namespace slsolv::num
