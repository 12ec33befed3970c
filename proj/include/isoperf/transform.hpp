#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isoperf/cayley.hpp"

namespace isoperf {

/// Exact rational with positive denominator; used wherever a bound must be
/// compared against a boundary/size ratio with zero tolerance.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// -1 / 0 / +1 for a <=> b, exact.
int fraction_cmp(const Fraction& a, const Fraction& b);

/// Result of a sup computation. `certified` means the reported value provably
/// equals the sup over the full (untruncated) domain; the transform never
/// claims the sup is attained, only reports the best argument found.
struct TransformResult {
  double value = 0;
  double argmax_r = 0;  // +infinity when the sup is a limit, not attained
  bool certified = false;
  bool tau_non_monotone = false;  // continuous path fell back to a grid scan
};

/// Exact-rational variant for integer/rational cardinalities.
struct DiscreteBound {
  Fraction bound;
  int argmax_r = 0;  // -1 when the sup is a limit at r -> infinity
  bool certified = false;
};

/// sup over integer r in [1, R] of (1/r)(1 - t/gamma(r)). Once the running
/// best b > 0 satisfies (R+1) b >= 1, every untruncated term is <= 1/r < b,
/// so the sup is certified; saturation certifies as well.
TransformResult u_discrete(const GrowthTable& table, double t);
DiscreteBound u_discrete_rational(const GrowthTable& table, std::int64_t t_num,
                                  std::int64_t t_den);

/// max over r in [1, R] of (gamma(r) - t) / (r gamma(r) - prefix(r-1)).
/// Every term is a valid lower bound, so truncation is sound; only a
/// saturated table certifies completeness.
TransformResult strong_lower_bound(const GrowthTable& table, double t);
DiscreteBound strong_lower_bound_rational(const GrowthTable& table, std::int64_t t_num,
                                          std::int64_t t_den);

/// Differentiable growth family g(r) on (0, infinity), with log-space
/// evaluation so stretched exponentials stay finite for t up to 1e300.
class GrowthModel {
 public:
  /// g(r) = c r^d, c > 0, d >= 1
  static GrowthModel polynomial(double c, double d);
  /// g(r) = c exp(b r^alpha), c > 0, b > 0, 0 < alpha <= 1
  static GrowthModel stretched_exp(double c, double b, double alpha);
  /// arbitrary increasing differentiable g with derivative evaluator
  static GrowthModel custom(std::function<double(double)> g,
                            std::function<double(double)> dg);
  /// same, but supplied in log form (needed when g itself overflows)
  static GrowthModel custom_log(std::function<double(double)> log_g,
                                std::function<double(double)> log_dg);

  double value(double r) const;
  double log_value(double r) const;
  double deriv(double r) const;
  double log_deriv(double r) const;
  /// r g'(r) / g(r)
  double rgg(double r) const;
  /// g(0+) limit; the transform is finite only for t above this.
  double value_at_zero() const;
  /// g^{-1}(t); closed form for the analytic families, monotone bracketed
  /// search otherwise.
  double inverse(double t) const;
  /// d/dr log(tau(r)) when analytically available.
  std::optional<double> dlog_tau(double r) const;

  bool is_polynomial() const;

 private:
  struct Poly {
    double c, d;
  };
  struct Stretched {
    double c, b, alpha;
  };
  struct Custom {
    std::function<double(double)> log_g;
    std::function<double(double)> log_dg;
  };
  std::variant<Poly, Stretched, Custom> family_;
};

/// tau(r) = g(r) / (1 + r g'(r)/g(r)); the sup objective peaks where
/// tau(r) = t.
double tau(const GrowthModel& g, double r);
double log_tau(const GrowthModel& g, double r);

struct RhoResult {
  double r = 0;
  /// true: r is the root of tau(r) = t from the bracketed solve;
  /// false: tau looked non-monotone and r is the grid-scan argmax.
  bool root_certified = false;
};

/// Largest maximizer of the sup objective: bracket-double from r = 1,
/// bisect to ~4 digits, then Newton to 1e-12 relative. A non-monotone tau
/// sample pattern falls back to a log-grid scan with golden-section
/// refinement, taking the largest argmax.
RhoResult rho(const GrowthModel& g, double t);

struct UContinuousOptions {
  bool cross_check = true;
  int grid_per_decade = 64;  // stride of the verification grid around rho
};

/// U_g(t) = (1/rho)(1 - t/g(rho)), cross-checked against a log-spaced grid
/// sup within 1e-9 relative.
TransformResult u_continuous(const GrowthModel& g, double t,
                             const UContinuousOptions& opt = {});

/// Closed form for g(r) = c r^d: (d c^{1/d} / (d+1)^{1+1/d}) t^{-1/d}.
double u_poly_closed(double c, double d, double t);

/// The solution y >= 1 of e^y / y = x for x >= e; equals the defining
/// fixed point y = log x + log y. Damped Newton on y - log y - log x,
/// seeded at log x + log log x (log x + 1 below e^2).
double lambert_f(double x);
/// Same, taking log x directly (x up to 1e300 and beyond).
double lambert_f_from_log(double log_x);

/// Closed form for g(r) = c exp(b r^alpha) with lam = (alpha/c) e^{1/alpha}:
/// (b/f(lam t))^{1/alpha} (1 - 1/(alpha f(lam t)))^{1-1/alpha}.
double u_stretched_closed(double c, double b, double alpha, double t);

/// (c / (alpha e b)) exp(b n^alpha) / n^alpha
double folner_lower_exp(double c, double b, double alpha, double n);

struct LegendreResult {
  double value = 0;
  double argmax_x = 0;
  bool edge = false;  // sup met the window edge; enlarge x_max
};

/// sup over [0, x_max] of y x - f(x), grid plus golden-section refinement.
LegendreResult legendre(const std::function<double(double)>& f, double y, double x_max);

struct TspgSeries {
  double lambda = 1;
  std::vector<double> log_ratio;  // log of r g'(r) g(lambda r) / g(r)^2
  bool monotone_tail = false;     // monotone over the last decade of the grid
  bool end_ok = false;            // end value clears its threshold
};

struct TspgReport {
  std::vector<double> r_grid;
  std::vector<TspgSeries> series;
  double t_hi = 1e3;
  double t_lo = 1e-3;
  bool pass = false;  // heuristic verdict, see tspg_check
};

/// Heuristic growth-tameness diagnostic: the lambda = 1 sequence must exceed
/// t_hi and every lambda < 1 sequence must fall below t_lo at the end of the
/// grid, each monotonically over the last decade. lambda = 1 is evaluated
/// even if absent from `lambdas`.
TspgReport tspg_check(const GrowthModel& g, std::vector<double> lambdas,
                      std::vector<double> r_grid, double t_hi = 1e3, double t_lo = 1e-3);

/// Log-spaced grid helper (inclusive endpoints).
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

}  // namespace isoperf
