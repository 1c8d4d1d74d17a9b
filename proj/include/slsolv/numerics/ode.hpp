#pragma once

// Adaptive integration of the first-order system for (r z')' = q z in the
// variables (z, w) with w = r z', plus a Hermite-interpolated trajectory.
// Node derivatives are exact: z' = w/r and w' = q z.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace slsolv::num {

class OdeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Trajectory {
  std::vector<double> x;  // ascending
  std::vector<double> z;  // solution values
  std::vector<double> w;  // r z'
  std::function<double(double)> r;  // weight, needed for z' = w/r
  std::function<double(double)> q;  // potential, needed for w' = q z

  std::size_t segment(double xx) const {
    auto it = std::upper_bound(x.begin(), x.end(), xx);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
  }

  static double hermite(double t, double h, double y0, double y1, double d0,
                        double d1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
  }

  double eval_w(double xx) const {
    const std::size_t i = segment(xx);
    const double h = x[i + 1] - x[i];
    const double t = (xx - x[i]) / h;
    return hermite(t, h, w[i], w[i + 1], q(x[i]) * z[i],
                   q(x[i + 1]) * z[i + 1]);
  }

  double eval(double xx) const {
    const std::size_t i = segment(xx);
    const double h = x[i + 1] - x[i];
    const double t = (xx - x[i]) / h;
    return hermite(t, h, z[i], z[i + 1], w[i] / r(x[i]),
                   w[i + 1] / r(x[i + 1]));
  }

  double eval_prime(double xx) const { return eval_w(xx) / r(xx); }

  double front_x() const { return x.front(); }
  double back_x() const { return x.back(); }
};

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  double max_step_frac = 0.04;  // |dt| ≤ frac · (1 + |x|)
  std::size_t max_nodes = 2'000'000;
};

/// Integrates (z, w) from x_from to x_to (either direction), recording every
/// accepted step. on_state, when set, can reject the run (sign loss etc.).
inline Trajectory integrate_sl(const std::function<double(double)>& r,
                               const std::function<double(double)>& q,
                               double x_from, double x_to, double z0, double w0,
                               const IntegrateOptions& opt = {},
                               const std::function<bool(double, double)>&
                                   on_state = nullptr) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  auto rhs = [&](const State& y, State& dydx, double xx) {
    dydx[0] = y[1] / r(xx);
    dydx[1] = q(xx) * y[0];
  };

  auto stepper = odeint::make_controlled(
      opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());

  const int dir = x_to >= x_from ? +1 : -1;
  State y{z0, w0};
  double xx = x_from;
  double dt = dir * std::min(opt.max_step_frac * (1.0 + std::abs(xx)),
                             std::abs(x_to - x_from));

  Trajectory traj;
  traj.r = r;
  traj.q = q;
  traj.x.push_back(xx);
  traj.z.push_back(y[0]);
  traj.w.push_back(y[1]);

  while (dir * (x_to - xx) > 0.0) {
    const double cap = opt.max_step_frac * (1.0 + std::abs(xx));
    if (std::abs(dt) > cap) dt = dir * cap;
    if (dir * (xx + dt) > dir * x_to) dt = x_to - xx;

    odeint::controlled_step_result rc = odeint::fail;
    for (int attempt = 0; attempt < 60; ++attempt) {
      rc = stepper.try_step(rhs, y, xx, dt);
      if (rc == odeint::success) break;
    }
    if (rc != odeint::success)
      throw OdeError("integrate_sl: step size collapsed");

    traj.x.push_back(xx);
    traj.z.push_back(y[0]);
    traj.w.push_back(y[1]);
    if (traj.x.size() > opt.max_nodes)
      throw OdeError("integrate_sl: node budget exceeded");
    if (on_state && !on_state(xx, y[0]))
      throw OdeError("integrate_sl: rejected by state monitor");
  }

  if (dir < 0) {
    std::reverse(traj.x.begin(), traj.x.end());
    std::reverse(traj.z.begin(), traj.z.end());
    std::reverse(traj.w.begin(), traj.w.end());
  }
  return traj;
}

}  // namespace slsolv::num
