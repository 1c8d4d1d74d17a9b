#pragma once

// Coefficient pair (r, q) of -(r y')' + q y = f: evaluation, the improper
// integrals every downstream computation needs, and regime classification.
//
// r and q each carry a "kind" so analytically tractable shapes keep closed
// forms for their tail integrals; everything else goes through adaptive
// quadrature. Mixed pairs (say constant r with an algebraically decaying q)
// are first-class.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "slsolv/numerics/quadrature.hpp"

namespace slsolv {

class NonIntegrableTail : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Ternary { True, False, Undetermined };

inline const char* to_string(Ternary t) {
  switch (t) {
    case Ternary::True: return "true";
    case Ternary::False: return "false";
    default: return "undetermined";
  }
}

enum class Family { PowerLaw, Constant, Tabulated, Composite };

namespace coeff_detail {

enum class Kind { AlgebraicBell, Constant, Zero, Tabulated, Custom };

// One coefficient function. AlgebraicBell is (1+x²)^p (p>0 for r-type growth,
// p<0 for q-type decay); tails of the others are described by |x|^exponent.
struct Component {
  Kind kind = Kind::Custom;
  double power = 0.0;      // AlgebraicBell exponent p
  double level = 0.0;      // Constant value
  std::vector<double> xs, ys;              // Tabulated
  std::optional<double> tail_exponent;     // Tabulated/Custom: f ~ c·|x|^e
  std::function<double(double)> fn;        // Custom (also used as override)

  double operator()(double x) const {
    switch (kind) {
      case Kind::AlgebraicBell: return std::pow(1.0 + x * x, power);
      case Kind::Constant: return level;
      case Kind::Zero: return 0.0;
      case Kind::Tabulated: return eval_table(x);
      default: return fn(x);
    }
  }

  double eval_table(double x) const {
    if (x <= xs.front() || x >= xs.back()) {
      const bool left = x <= xs.front();
      const double xe = left ? xs.front() : xs.back();
      const double ye = left ? ys.front() : ys.back();
      if (x == xe) return ye;
      if (!tail_exponent) return ye;  // flat fallback for evaluation only
      const double base = std::max(1.0, std::abs(xe));
      return ye * std::pow(std::abs(x) / base, *tail_exponent);
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
  }
};

}  // namespace coeff_detail

struct IntegrabilityProfile {
  Ternary inv_r_l1 = Ternary::Undetermined;
  Ternary q_l1 = Ternary::Undetermined;
  // window-product condition: leftward and rightward mass products
  // ∫ dt/r · ∫ q dt over growing windows diverge at every anchor
  Ternary window_products_diverge = Ternary::Undetermined;
  // both tail integrals of q strictly positive at every cut
  Ternary q_mass_on_both_tails = Ternary::Undetermined;
  double w0 = num::kInf;  // ∫_ℝ dt/r, finite iff inv_r_l1
};

class CoefficientPair {
 public:
  using Component = coeff_detail::Component;
  using Kind = coeff_detail::Kind;

  static CoefficientPair power_law(double alpha, double beta) {
    if (!(alpha > 0.5) || !(beta > 0.5))
      throw std::invalid_argument("power_law: alpha and beta must exceed 1/2");
    CoefficientPair p;
    p.family_ = Family::PowerLaw;
    p.r_.kind = Kind::AlgebraicBell;
    p.r_.power = alpha;
    p.q_.kind = Kind::AlgebraicBell;
    p.q_.power = -beta;
    return p;
  }

  static CoefficientPair constant(double r0, double q0) {
    if (!(r0 > 0.0) || q0 < 0.0)
      throw std::invalid_argument("constant: need r0 > 0 and q0 >= 0");
    CoefficientPair p;
    p.family_ = Family::Constant;
    p.r_.kind = Kind::Constant;
    p.r_.level = r0;
    p.q_.kind = q0 == 0.0 ? Kind::Zero : Kind::Constant;
    p.q_.level = q0;
    return p;
  }

  /// Constant r with the algebraic-bell q of the power family.
  static CoefficientPair constant_r_power_q(double r0, double beta) {
    CoefficientPair p;
    p.family_ = Family::Composite;
    p.r_.kind = Kind::Constant;
    p.r_.level = r0;
    p.q_.kind = Kind::AlgebraicBell;
    p.q_.power = -beta;
    return p;
  }

  static CoefficientPair tabulated(std::vector<std::array<double, 3>> points,
                                   std::optional<double> r_tail_exponent,
                                   std::optional<double> q_tail_exponent) {
    if (points.size() < 2)
      throw std::invalid_argument("tabulated: need at least two samples");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    CoefficientPair p;
    p.family_ = Family::Tabulated;
    p.r_.kind = Kind::Tabulated;
    p.q_.kind = Kind::Tabulated;
    for (const auto& row : points) {
      if (!(row[1] > 0.0) || row[2] < 0.0)
        throw std::invalid_argument("tabulated: need r > 0 and q >= 0");
      p.r_.xs.push_back(row[0]);
      p.r_.ys.push_back(row[1]);
      p.q_.xs.push_back(row[0]);
      p.q_.ys.push_back(row[2]);
    }
    p.r_.tail_exponent = r_tail_exponent;
    p.q_.tail_exponent = q_tail_exponent;
    return p;
  }

  static CoefficientPair custom(std::function<double(double)> r,
                                std::function<double(double)> q,
                                std::optional<double> r_tail_exponent = {},
                                std::optional<double> q_tail_exponent = {}) {
    CoefficientPair p;
    p.family_ = Family::Composite;
    p.r_.kind = Kind::Custom;
    p.r_.fn = std::move(r);
    p.r_.tail_exponent = r_tail_exponent;
    p.q_.kind = Kind::Custom;
    p.q_.fn = std::move(q);
    p.q_.tail_exponent = q_tail_exponent;
    return p;
  }

  /// Same weight r, zero potential: the model pair of this one.
  CoefficientPair with_zero_q() const {
    CoefficientPair p = *this;
    p.q_ = Component{};
    p.q_.kind = Kind::Zero;
    p.family_ = (family_ == Family::Constant) ? Family::Constant
                                              : Family::Composite;
    return p;
  }

  Family family() const { return family_; }

  double r(double x) const {
    const double v = r_(x);
    if (!(v > 0.0)) throw std::domain_error("coefficient r must be positive");
    return v;
  }
  double q(double x) const {
    const double v = q_(x);
    if (v < 0.0) throw std::domain_error("coefficient q must be nonnegative");
    return v;
  }

  bool q_is_zero() const { return q_.kind == Kind::Zero; }

  const Component& r_component() const { return r_; }
  const Component& q_component() const { return q_; }

  // analytic shape hints
  std::optional<double> power_alpha() const {
    return r_.kind == Kind::AlgebraicBell ? std::optional<double>(r_.power)
                                          : std::nullopt;
  }
  std::optional<double> power_beta() const {
    return q_.kind == Kind::AlgebraicBell ? std::optional<double>(-q_.power)
                                          : std::nullopt;
  }
  std::optional<double> constant_r0() const {
    return r_.kind == Kind::Constant ? std::optional<double>(r_.level)
                                     : std::nullopt;
  }
  std::optional<double> constant_q0() const {
    if (q_.kind == Kind::Constant) return q_.level;
    if (q_.kind == Kind::Zero) return 0.0;
    return std::nullopt;
  }

 private:
  Family family_ = Family::Composite;
  Component r_, q_;
};

// ---------------------------------------------------------------------------
// tail integrals of (1+x²)^p, p < -1/2, via the incomplete beta function:
//   ∫_x^∞ (1+t²)^p dt = ½ B_{1/(1+x²)}(-p - ½, ½)   for x ≥ 0.

namespace coeff_detail {

inline double bell_total_mass(double p) {
  return boost::math::beta(-p - 0.5, 0.5);
}

inline double bell_upper_tail(double p, double x) {
  const double a = -p - 0.5;
  if (x >= 0.0)
    return 0.5 * boost::math::beta(a, 0.5, 1.0 / (1.0 + x * x));
  return bell_total_mass(p) - bell_upper_tail(p, -x);
}

inline double bell_lower_tail(double p, double x) {
  return bell_upper_tail(p, -x);
}

// generic integral of one component over [a, b] with ±∞ endpoints
inline double integrate_component(const Component& c, double a, double b,
                                  double tol, const char* what) {
  if (a > b) throw std::invalid_argument("integrate: a > b");
  if (a == b) return 0.0;
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);

  switch (c.kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      if (lo_inf || hi_inf) {
        if (c.level == 0.0) return 0.0;
        throw NonIntegrableTail(std::string(what) +
                                ": constant integrand over unbounded range");
      }
      return c.level * (b - a);
    case Kind::AlgebraicBell: {
      const double p = c.power;
      if (!lo_inf && !hi_inf)
        return num::integrate_finite([&](double t) { return c(t); }, a, b,
                                     tol);
      if (p >= -0.5)
        throw NonIntegrableTail(std::string(what) +
                                ": algebraic tail is not integrable");
      if (lo_inf && hi_inf) return bell_total_mass(p);
      if (hi_inf) return bell_upper_tail(p, a);
      return bell_lower_tail(p, b);
    }
    case Kind::Tabulated: {
      double total = 0.0;
      const double lo_edge = c.xs.front(), hi_edge = c.xs.back();
      auto table_part = [&](double x0, double x1) {
        if (x0 >= x1) return 0.0;
        return num::integrate_finite([&](double t) { return c(t); }, x0, x1,
                                     tol);
      };
      // beyond the table: y_edge · (|x|/base)^e with the table edge as anchor
      auto tail_part = [&](double from, double to, int dir) -> double {
        if (from >= to) return 0.0;
        if (!c.tail_exponent)
          throw NonIntegrableTail(std::string(what) +
                                  ": tabulated tail metadata required");
        const double e = *c.tail_exponent;
        const double edge = dir > 0 ? hi_edge : lo_edge;
        const double ye = dir > 0 ? c.ys.back() : c.ys.front();
        const double base = std::max(1.0, std::abs(edge));
        if (ye == 0.0) return 0.0;
        auto prim = [&](double x) {  // antiderivative of ye·(|x|/base)^e
          const double ax = std::abs(x);
          if (e == -1.0)
            return ye * base * std::log(ax / base) * (x < 0 ? -1.0 : 1.0);
          return ye * std::pow(ax / base, e) * ax / (e + 1.0) *
                 (x < 0 ? -1.0 : 1.0);
        };
        if (std::isinf(to) || std::isinf(from)) {
          if (e >= -1.0)
            throw NonIntegrableTail(std::string(what) +
                                    ": tabulated tail is not integrable");
          return std::isinf(to) ? -prim(from) : prim(to);
        }
        return prim(to) - prim(from);
      };
      total += tail_part(a, std::min(b, lo_edge), -1);
      total += table_part(std::max(a, lo_edge), std::min(b, hi_edge));
      total += tail_part(std::max(a, hi_edge), b, +1);
      return total;
    }
    default: {  // Custom
      if (!lo_inf && !hi_inf)
        return num::integrate_finite([&](double t) { return c(t); }, a, b,
                                     tol);
      return num::integrate_improper([&](double t) { return c(t); }, a, b, tol,
                                     what);
    }
  }
}

// window-doubling integrability probe for one direction (analytic kinds are
// decided exactly; this is the Custom fallback)
inline Ternary tail_l1_probe(const Component& c, int dir, double tol) {
  switch (c.kind) {
    case Kind::Zero: return Ternary::True;
    case Kind::Constant: return c.level == 0.0 ? Ternary::True : Ternary::False;
    case Kind::AlgebraicBell: return c.power < -0.5 ? Ternary::True : Ternary::False;
    case Kind::Tabulated:
      if (!c.tail_exponent) return Ternary::Undetermined;
      if ((dir > 0 ? c.ys.back() : c.ys.front()) == 0.0) return Ternary::True;
      if (*c.tail_exponent < -1.0) return Ternary::True;
      return Ternary::False;
    default: break;
  }
  auto t = num::integrate_tail([&](double x) { return c(x); }, dir * 8.0, dir,
                               tol, 40);
  switch (t.kind) {
    case num::TailKind::Convergent: return Ternary::True;
    case num::TailKind::Divergent: return Ternary::False;
    default: return Ternary::Undetermined;
  }
}

// does q carry strictly positive mass beyond every cut in this direction?
inline Ternary tail_mass_positive(const Component& q, int dir, double tol) {
  switch (q.kind) {
    case Kind::Zero: return Ternary::False;
    case Kind::Constant: return q.level > 0.0 ? Ternary::True : Ternary::False;
    case Kind::AlgebraicBell: return Ternary::True;
    case Kind::Tabulated: {
      const double edge = dir > 0 ? q.ys.back() : q.ys.front();
      if (edge > 0.0) return Ternary::True;
      return Ternary::False;
    }
    default: break;
  }
  double x = 8.0;
  int zero_windows = 0;
  for (int k = 0; k < 12; ++k) {
    const double lo = dir > 0 ? dir * x : dir * 2 * x;
    const double hi = dir > 0 ? dir * 2 * x : dir * x;
    const double m =
        num::integrate_finite([&](double t) { return q(t); }, lo, hi, tol);
    if (m <= 1e-300) {
      if (++zero_windows >= 3) return Ternary::False;
    } else {
      zero_windows = 0;
    }
    x *= 2.0;
  }
  return zero_windows > 0 ? Ternary::Undetermined : Ternary::True;
}

inline Ternary ternary_and(Ternary a, Ternary b) {
  if (a == Ternary::False || b == Ternary::False) return Ternary::False;
  if (a == Ternary::True && b == Ternary::True) return Ternary::True;
  return Ternary::Undetermined;
}

inline Ternary ternary_or(Ternary a, Ternary b) {
  if (a == Ternary::True || b == Ternary::True) return Ternary::True;
  if (a == Ternary::False && b == Ternary::False) return Ternary::False;
  return Ternary::Undetermined;
}

inline Ternary ternary_not(Ternary a) {
  if (a == Ternary::True) return Ternary::False;
  if (a == Ternary::False) return Ternary::True;
  return Ternary::Undetermined;
}

}  // namespace coeff_detail

// ---------------------------------------------------------------------------

/// ∫_a^b dt/r(t), endpoints may be ±∞. Absolute-error target tol.
inline double integrate_inv_r(const CoefficientPair& pair, double a, double b,
                              double tol) {
  using namespace coeff_detail;
  const auto& rc = pair.r_component();
  Component inv;
  switch (rc.kind) {
    case Kind::AlgebraicBell:
      inv.kind = Kind::AlgebraicBell;
      inv.power = -rc.power;
      break;
    case Kind::Constant:
      inv.kind = Kind::Constant;
      inv.level = 1.0 / rc.level;
      break;
    case Kind::Tabulated:
      // reciprocal of the interpolant over the table, power tail outside
      inv.kind = Kind::Tabulated;
      inv.xs = rc.xs;
      inv.ys.reserve(rc.ys.size());
      for (double y : rc.ys) inv.ys.push_back(1.0 / y);
      if (rc.tail_exponent) inv.tail_exponent = -*rc.tail_exponent;
      break;
    default:
      inv.kind = Kind::Custom;
      inv.fn = [&rc](double x) { return 1.0 / rc.fn(x); };
      if (rc.tail_exponent) inv.tail_exponent = -*rc.tail_exponent;
      break;
  }
  return integrate_component(inv, a, b, tol, "1/r");
}

/// ∫_a^b q(t) dt, endpoints may be ±∞.
inline double integrate_q(const CoefficientPair& pair, double a, double b,
                          double tol) {
  return coeff_detail::integrate_component(pair.q_component(), a, b, tol, "q");
}

/// Regime flags. Analytic fast paths by component kind; window-trend probing
/// otherwise, with honest Undetermined on ambiguity.
inline IntegrabilityProfile classify(const CoefficientPair& pair,
                                     double tol = 1e-8) {
  using namespace coeff_detail;
  IntegrabilityProfile prof;

  const auto& rcomp = pair.r_component();
  const auto& qcomp = pair.q_component();

  Component inv_r;
  inv_r.kind = Kind::Custom;
  inv_r.fn = [&](double x) { return 1.0 / rcomp(x); };
  if (rcomp.kind == Kind::AlgebraicBell) {
    inv_r.kind = Kind::AlgebraicBell;
    inv_r.power = -rcomp.power;
  } else if (rcomp.kind == Kind::Constant) {
    inv_r.kind = Kind::Constant;
    inv_r.level = 1.0 / rcomp.level;
  } else if (rcomp.tail_exponent) {
    inv_r.tail_exponent = -*rcomp.tail_exponent;
  }

  const Ternary inv_r_left = tail_l1_probe(inv_r, -1, tol);
  const Ternary inv_r_right = tail_l1_probe(inv_r, +1, tol);
  const Ternary q_left = tail_l1_probe(qcomp, -1, tol);
  const Ternary q_right = tail_l1_probe(qcomp, +1, tol);

  prof.inv_r_l1 = ternary_and(inv_r_left, inv_r_right);
  prof.q_l1 = ternary_and(q_left, q_right);

  const Ternary mass_left = tail_mass_positive(qcomp, -1, tol);
  const Ternary mass_right = tail_mass_positive(qcomp, +1, tol);
  prof.q_mass_on_both_tails = ternary_and(mass_left, mass_right);

  // per direction: window product → ∞ iff q escapes L1 there, or 1/r does
  // while q keeps mass beyond every cut
  const Ternary left = ternary_or(
      ternary_not(q_left), ternary_and(ternary_not(inv_r_left), mass_left));
  const Ternary right = ternary_or(
      ternary_not(q_right), ternary_and(ternary_not(inv_r_right), mass_right));
  prof.window_products_diverge = ternary_and(left, right);

  if (prof.inv_r_l1 == Ternary::True)
    prof.w0 = integrate_inv_r(pair, -num::kInf, num::kInf, tol);
  else
    prof.w0 = num::kInf;
  return prof;
}

}  // namespace slsolv
