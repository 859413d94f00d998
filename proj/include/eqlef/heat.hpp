// Flat-model heat kernels, twisted supertraces at k = 0 and their small-t limits.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "eqlef/error.hpp"
#include "eqlef/gtrace.hpp"

namespace eqlef {

using Complex = std::complex<double>;

/// Smooth radial bump: 1 on r <= inner, 0 on r >= outer. With hole_outer > 0 it
/// is additionally 0 on r <= hole_inner and 1 from hole_outer on (an annulus).
struct Cutoff {
  double inner = 0.15;
  double outer = 0.6;
  double hole_inner = 0;
  double hole_outer = 0;

  static Cutoff ball(double inner, double outer) { return {inner, outer, 0, 0}; }
  static Cutoff annulus(double hole_inner, double hole_outer, double inner, double outer) {
    return {inner, outer, hole_inner, hole_outer};
  }

  bool has_hole() const { return hole_outer > 0; }

  /// exp(-1/x) glued to a partition of unity on [a, b]: 1 below a, 0 above b.
  static double step_down(double r, double a, double b) {
    if (r <= a) return 1;
    if (r >= b) return 0;
    const double s = (r - a) / (b - a);
    const double p = std::exp(-1 / (1 - s)), q = std::exp(-1 / s);
    return p / (p + q);
  }

  double operator()(double r) const {
    double v = step_down(r, inner, outer);
    if (has_hole()) v *= 1 - step_down(r, hole_inner, hole_outer);
    return v;
  }

  void validate() const {
    if (!(inner > 0 && outer > inner)) throw Error("cutoff needs 0 < inner < outer");
    if (has_hole() && !(hole_inner > 0 && hole_outer > hole_inner && inner >= hole_outer))
      throw Error("annulus cutoff needs 0 < hole_inner < hole_outer <= inner");
  }
};

struct Quadrature {
  double radius = 1.6;
  int points_per_axis = 411;
  double spacing() const { return 2 * radius / (points_per_axis - 1); }
};

struct HeatConfig {
  int n = 1;  // complex dimension
  std::vector<double> t_schedule{4e-2, 1e-2, 4e-3, 1e-3};
  Quadrature quadrature;
  Cutoff cutoff;

  /// Smallest grid meeting R >= 8 sqrt(max t) and spacing <= sqrt(min t) / 4.
  static HeatConfig for_schedule(int n, std::vector<double> schedule, Cutoff cutoff, double radius = 0) {
    HeatConfig c;
    c.n = n;
    c.t_schedule = std::move(schedule);
    c.cutoff = cutoff;
    if (c.t_schedule.empty()) throw Error("empty t schedule");
    double tmax = 0, tmin = std::numeric_limits<double>::infinity();
    for (double t : c.t_schedule) {
      tmax = std::max(tmax, t);
      tmin = std::min(tmin, t);
    }
    c.quadrature.radius = std::max({radius, 8 * std::sqrt(tmax), cutoff.outer});
    const double h = std::sqrt(tmin) / 4;
    c.quadrature.points_per_axis = static_cast<int>(std::ceil(2 * c.quadrature.radius / h)) + 1;
    c.validate();
    return c;
  }

  void validate() const {
    if (n != 1 && n != 2) throw Error("heat model supports complex dimension 1 or 2");
    if (t_schedule.empty()) throw Error("empty t schedule");
    for (std::size_t i = 0; i < t_schedule.size(); ++i) {
      if (!(t_schedule[i] > 0)) throw Error("t must be positive");
      if (i > 0 && !(t_schedule[i] < t_schedule[i - 1])) throw Error("t schedule must be strictly decreasing");
    }
    cutoff.validate();
    check_grid(t_schedule.front());
    check_grid(t_schedule.back());
  }

  /// Grid-resolution guard for a single t.
  void check_grid(double t) const {
    if (quadrature.points_per_axis < 3) throw Error("quadrature needs at least 3 points per axis");
    if (quadrature.radius < 8 * std::sqrt(t)) throw Error("quadrature radius below 8 sqrt(t)");
    if (quadrature.spacing() > std::sqrt(t) / 4) throw Error("grid spacing exceeds sqrt(t)/4");
    if (cutoff.outer > quadrature.radius) throw Error("cutoff support exceeds the quadrature box");
  }
};

/// (pi t)^-n exp(-|x - y|^2 / t); points are real coordinate vectors of length 2n.
inline double heat_kernel(double t, const std::vector<double>& x, const std::vector<double>& y, int n) {
  if (!(t > 0)) throw Error("heat kernel needs t > 0");
  if (x.size() != static_cast<std::size_t>(2 * n) || y.size() != x.size()) throw Error("point dimension mismatch");
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  return std::exp(-d2 / t) / std::pow(std::numbers::pi * t, n);
}

namespace detail {

/// Trapezoid sum over the square grid of sum f(x1, x2), fixed summation order.
template <class F>
double grid_sum(const Quadrature& q, F&& f) {
  const double h = q.spacing();
  double total = 0;
  for (int i = 0; i < q.points_per_axis; ++i) {
    const double x = -q.radius + i * h;
    const double wi = (i == 0 || i == q.points_per_axis - 1) ? 0.5 : 1.0;
    double row = 0;
    for (int j = 0; j < q.points_per_axis; ++j) {
      const double y = -q.radius + j * h;
      const double wj = (j == 0 || j == q.points_per_axis - 1) ? 0.5 : 1.0;
      row += wj * f(x, y);
    }
    total += wi * row;
  }
  return total * h * h;
}

/// Integral over C of phi(|x|) k_t(g^-1 x, x) for a rotation by theta.
inline double rotated_kernel_integral(double theta, const Cutoff& phi, double t, const Quadrature& q) {
  const double c = std::cos(theta), s = std::sin(theta);
  return grid_sum(q, [&](double x, double y) {
    const double w = phi(std::hypot(x, y));
    if (w == 0) return 0.0;
    // g^-1 x: rotation by -theta
    return w * heat_kernel(t, {c * x + s * y, -s * x + c * y}, {x, y}, 1);
  });
}

}  // namespace detail

/// Trapezoid approximation of the integral of k_t(0, y) over the quadrature box.
inline double kernel_mass(double t, const Quadrature& q) {
  return detail::grid_sum(q, [&](double x, double y) { return heat_kernel(t, {0, 0}, {x, y}, 1); });
}

/// int phi(x) str(g) k_t(g^-1 x, x) dx, with str over the (0, q)-forms giving
/// prod_i (1 - conj(lambda_i)^-1). For n = 2 the cutoff is the product
/// phi(|x1|) phi(|x2|), so the integral factorizes over the two coordinates.
inline Complex twisted_supertrace(const std::vector<double>& angles, double t, const HeatConfig& cfg) {
  if (angles.size() != static_cast<std::size_t>(cfg.n)) throw Error("need one rotation angle per complex dimension");
  cfg.cutoff.validate();
  cfg.check_grid(t);
  Complex total(1, 0);
  for (double theta : angles) {
    const Complex lambda = std::polar(1.0, theta);
    if (std::abs(lambda - 1.0) < 1e-12) throw Error("rotation angle must be nonzero mod 2 pi");
    const Complex str = 1.0 - 1.0 / std::conj(lambda);
    total *= str * detail::rotated_kernel_integral(theta, cfg.cutoff, t, cfg.quadrature);
  }
  return total;
}

inline std::vector<double> rotation_angles(const DiagonalAction& g) {
  std::vector<double> a;
  for (long e : g.exponents()) a.push_back(2 * std::numbers::pi * static_cast<double>(e) / g.order());
  return a;
}

/// |value(t_min) - value(t_min at half spacing)|.
inline double grid_halving_change(const std::vector<double>& angles, const HeatConfig& cfg) {
  HeatConfig fine = cfg;
  fine.quadrature.points_per_axis = 2 * cfg.quadrature.points_per_axis - 1;
  const double t = cfg.t_schedule.back();
  return std::abs(twisted_supertrace(angles, t, cfg) - twisted_supertrace(angles, t, fine));
}

struct SmallTimeReport {
  std::vector<double> t;
  std::vector<Complex> values;
  std::vector<double> errors;  // |value(t) - exact|
  Complex limit;               // first-order Richardson extrapolation from the two smallest t
  Complex exact;
  double error_at_min_t = 0;   // |value(t_min) - exact|
  double limit_error = 0;      // |limit - exact|
  double observed_order = 0;   // infinity when the errors are at rounding level
  double constant = 0;         // C with |value(t) - exact| <= C t on the schedule
  bool monotone = true;
  double tolerance = 1e-6;
  bool pass = false;
};

/// Runs the schedule and compares against the expected limit.
inline SmallTimeReport smalltime_limit(const std::vector<double>& angles, const HeatConfig& cfg, Complex exact,
                                       double tolerance = 1e-6) {
  cfg.validate();
  if (cfg.t_schedule.size() < 4) throw Error("small-t study needs at least 4 values of t");
  SmallTimeReport r;
  r.exact = exact;
  r.tolerance = tolerance;
  r.t = cfg.t_schedule;
  for (double t : r.t) r.values.push_back(twisted_supertrace(angles, t, cfg));
  const std::size_t m = r.t.size();
  const double ta = r.t[m - 2], tb = r.t[m - 1];
  r.limit = (ta * r.values[m - 1] - tb * r.values[m - 2]) / (ta - tb);
  constexpr double floor = 1e-13;
  for (std::size_t i = 0; i < m; ++i) {
    r.errors.push_back(std::abs(r.values[i] - exact));
    r.constant = std::max(r.constant, r.errors[i] / r.t[i]);
    if (i > 0 && r.errors[i] > r.errors[i - 1] + floor) r.monotone = false;
  }
  r.observed_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (r.errors[i] > floor && r.errors[i + 1] > floor)
      r.observed_order =
          std::min(r.observed_order, std::log(r.errors[i] / r.errors[i + 1]) / std::log(r.t[i] / r.t[i + 1]));
  r.error_at_min_t = std::abs(r.values.back() - exact);
  r.limit_error = std::abs(r.limit - exact);
  r.pass = r.monotone && r.observed_order >= 1 && r.error_at_min_t <= tolerance && r.limit_error <= tolerance;
  return r;
}

/// Expected limit for g: to_complex(det_factor(g)).
inline SmallTimeReport smalltime_limit(const DiagonalAction& g, const HeatConfig& cfg, double tolerance = 1e-6) {
  return smalltime_limit(rotation_angles(g), cfg, to_complex(det_factor(g)), tolerance);
}

inline HeatConfig default_heat_config(int n = 1) {
  return HeatConfig::for_schedule(n, {4e-2, 1e-2, 4e-3, 1e-3}, Cutoff::ball(0.15, 0.6), 1.6);
}

/// Cutoff supported in an annulus away from the fixed point, resolved down to t = 1e-4.
inline HeatConfig away_heat_config(int n = 1) {
  return HeatConfig::for_schedule(n, {4e-3, 1e-3, 4e-4, 1e-4}, Cutoff::annulus(0.15, 0.25, 0.35, 0.45));
}

}  // namespace eqlef
