#include "isoperf/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isoperf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

int fraction_cmp(const Fraction& a, const Fraction& b) {
  __int128 l = static_cast<__int128>(a.num) * b.den;
  __int128 r = static_cast<__int128>(b.num) * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

// ------------------------------------------------------------ discrete sups

namespace {

void require_radius(const GrowthTable& t) {
  if (t.radius() < 1)
    throw std::invalid_argument("transform: table radius must be >= 1");
}

// shared scan for both rational sups; term(r) = (q gamma(r) - p) / (q den_r)
template <typename DenFn>
DiscreteBound rational_sup(const GrowthTable& table, std::int64_t p, std::int64_t q,
                           DenFn den_of) {
  require_radius(table);
  if (q <= 0 || p <= 0) throw std::invalid_argument("transform: t must be > 0");
  DiscreteBound out;
  bool have = false;
  for (int r = 1; r <= table.radius(); ++r) {
    std::int64_t den = den_of(r);
    if (den <= 0) continue;  // trivial group: no sphere mass at any radius
    Fraction term{q * table.gamma(r) - p, q * den};
    // replace on >= so ties resolve to the larger r
    if (!have || fraction_cmp(term, out.bound) >= 0) {
      out.bound = term;
      out.argmax_r = r;
      have = true;
    }
  }
  if (!have) {
    out.bound = {0, 1};
    out.argmax_r = -1;
  }
  out.certified = table.saturated();
  return out;
}

}  // namespace

DiscreteBound u_discrete_rational(const GrowthTable& table, std::int64_t t_num,
                                  std::int64_t t_den) {
  DiscreteBound out = rational_sup(table, t_num, t_den,
                                   [&](int r) { return r * table.gamma(r); });
  if (table.saturated() && t_num >= *table.group_order() * t_den) {
    // every term is <= 0 and the tail (1/r)(1 - t/|G|) climbs back to 0,
    // which is attained iff t == |G| (at the saturation radius)
    out.bound = {0, 1};
    out.argmax_r = t_num == *table.group_order() * t_den ? *table.saturation_radius() : -1;
    return out;
  }
  if (!out.certified && out.bound.num > 0) {
    // 1/r envelope: any r > R has term <= 1/r <= 1/(R+1)
    __int128 lhs = static_cast<__int128>(out.bound.num) * (table.radius() + 1);
    if (lhs >= out.bound.den) out.certified = true;
  }
  return out;
}

DiscreteBound strong_lower_bound_rational(const GrowthTable& table, std::int64_t t_num,
                                          std::int64_t t_den) {
  // denominator r gamma(r) - prefix(r-1) = sum_{k=1..r} k sigma(k) >= sigma(1) > 0
  return rational_sup(table, t_num, t_den,
                      [&](int r) { return r * table.gamma(r) - table.prefix(r - 1); });
}

namespace {

// real-t scan shared by u_discrete / strong_lower_bound
template <typename DenFn>
TransformResult real_sup(const GrowthTable& table, double t, DenFn den_of) {
  require_radius(table);
  if (!(t > 0)) throw std::invalid_argument("transform: t must be > 0");
  TransformResult out;
  out.value = -kInf;
  for (int r = 1; r <= table.radius(); ++r) {
    double den = den_of(r);
    if (!(den > 0)) continue;  // trivial group: no sphere mass at any radius
    double term = (static_cast<double>(table.gamma(r)) - t) / den;
    if (term >= out.value) {
      out.value = term;
      out.argmax_r = r;
    }
  }
  if (out.value == -kInf) {
    out.value = 0;
    out.argmax_r = kInf;
  }
  out.certified = table.saturated();
  return out;
}

}  // namespace

TransformResult u_discrete(const GrowthTable& table, double t) {
  TransformResult out = real_sup(table, t, [&](int r) {
    return static_cast<double>(r) * static_cast<double>(table.gamma(r));
  });
  if (table.saturated() && t >= static_cast<double>(*table.group_order())) {
    out.value = 0.0;
    out.argmax_r = t == static_cast<double>(*table.group_order())
                       ? static_cast<double>(*table.saturation_radius())
                       : kInf;
    return out;
  }
  if (!out.certified && out.value > 0 && out.value * (table.radius() + 1) >= 1.0)
    out.certified = true;
  return out;
}

TransformResult strong_lower_bound(const GrowthTable& table, double t) {
  return real_sup(table, t, [&](int r) {
    return static_cast<double>(r) * static_cast<double>(table.gamma(r)) -
           static_cast<double>(table.prefix(r - 1));
  });
}

// ------------------------------------------------------------- GrowthModel

GrowthModel GrowthModel::polynomial(double c, double d) {
  if (!(c > 0) || !(d >= 1))
    throw std::invalid_argument("polynomial model requires c > 0 and d >= 1");
  GrowthModel m;
  m.family_ = Poly{c, d};
  return m;
}

GrowthModel GrowthModel::stretched_exp(double c, double b, double alpha) {
  if (!(c > 0) || !(b > 0) || !(alpha > 0) || !(alpha <= 1))
    throw std::invalid_argument(
        "stretched_exp model requires c > 0, b > 0, 0 < alpha <= 1");
  GrowthModel m;
  m.family_ = Stretched{c, b, alpha};
  return m;
}

GrowthModel GrowthModel::custom(std::function<double(double)> g,
                                std::function<double(double)> dg) {
  GrowthModel m;
  m.family_ = Custom{[g = std::move(g)](double r) { return std::log(g(r)); },
                     [dg = std::move(dg)](double r) { return std::log(dg(r)); }};
  return m;
}

GrowthModel GrowthModel::custom_log(std::function<double(double)> log_g,
                                    std::function<double(double)> log_dg) {
  GrowthModel m;
  m.family_ = Custom{std::move(log_g), std::move(log_dg)};
  return m;
}

bool GrowthModel::is_polynomial() const { return std::holds_alternative<Poly>(family_); }

double GrowthModel::log_value(double r) const {
  if (const auto* p = std::get_if<Poly>(&family_))
    return std::log(p->c) + p->d * std::log(r);
  if (const auto* s = std::get_if<Stretched>(&family_))
    return std::log(s->c) + s->b * std::pow(r, s->alpha);
  return std::get<Custom>(family_).log_g(r);
}

double GrowthModel::value(double r) const { return std::exp(log_value(r)); }

double GrowthModel::log_deriv(double r) const {
  if (const auto* p = std::get_if<Poly>(&family_))
    return std::log(p->c * p->d) + (p->d - 1) * std::log(r);
  if (const auto* s = std::get_if<Stretched>(&family_))
    return log_value(r) + std::log(s->alpha * s->b) + (s->alpha - 1) * std::log(r);
  return std::get<Custom>(family_).log_dg(r);
}

double GrowthModel::deriv(double r) const { return std::exp(log_deriv(r)); }

double GrowthModel::rgg(double r) const {
  if (const auto* p = std::get_if<Poly>(&family_)) return p->d;
  if (const auto* s = std::get_if<Stretched>(&family_))
    return s->alpha * s->b * std::pow(r, s->alpha);
  return std::exp(log_deriv(r) + std::log(r) - log_value(r));
}

double GrowthModel::value_at_zero() const {
  if (std::holds_alternative<Poly>(family_)) return 0.0;
  if (const auto* s = std::get_if<Stretched>(&family_)) return s->c;
  return std::exp(std::get<Custom>(family_).log_g(1e-12));
}

double GrowthModel::inverse(double t) const {
  if (!(t > 0)) throw std::domain_error("inverse: t must be > 0");
  const double lt = std::log(t);
  if (const auto* p = std::get_if<Poly>(&family_))
    return std::exp((lt - std::log(p->c)) / p->d);
  if (const auto* s = std::get_if<Stretched>(&family_)) {
    double u = (lt - std::log(s->c)) / s->b;
    if (!(u > 0)) throw std::domain_error("inverse: t below g(0)");
    return std::pow(u, 1.0 / s->alpha);
  }
  // monotone bracketed search on log_value(r) = lt
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (log_value(lo) > lt) {
    lo /= 2;
    if (++guard > 2100) throw std::domain_error("inverse: t below range");
  }
  guard = 0;
  while (log_value(hi) < lt) {
    hi *= 2;
    if (++guard > 2100) throw std::domain_error("inverse: t above range");
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (log_value(mid) < lt ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> GrowthModel::dlog_tau(double r) const {
  if (const auto* p = std::get_if<Poly>(&family_)) return p->d / r;
  if (const auto* s = std::get_if<Stretched>(&family_)) {
    double w = s->alpha * s->b * std::pow(r, s->alpha);  // r g'/g
    return (w / r) * (1.0 - s->alpha / (1.0 + w));
  }
  return std::nullopt;
}

double log_tau(const GrowthModel& g, double r) {
  return g.log_value(r) - std::log1p(g.rgg(r));
}

double tau(const GrowthModel& g, double r) {
  if (!(r > 0)) throw std::domain_error("tau: r must be > 0");
  double lt = log_tau(g, r);
  if (!std::isfinite(lt)) throw std::domain_error("tau: nonfinite g or g'");
  return std::exp(lt);
}

// ------------------------------------------------------------------- rho

namespace {

// (1/r)(1 - t/g(r)), stable for very large g
double objective(const GrowthModel& g, double t, double r) {
  double e = std::log(t) - g.log_value(r);
  double ratio = e > 700 ? kInf : std::exp(e);
  return (1.0 - ratio) / r;
}

struct GridScan {
  double best_r = 0;
  double best_val = -kInf;
};

// log-spaced scan keeping the largest argmax among ties
GridScan grid_scan(const GrowthModel& g, double t, double lo, double hi,
                   int per_decade) {
  GridScan out;
  for (double r : log_grid(lo, hi, per_decade)) {
    double v = objective(g, t, r);
    if (v >= out.best_val) {
      out.best_val = v;
      out.best_r = r;
    }
  }
  return out;
}

// golden-section maximization of the objective on [a, b]
double golden_max(const GrowthModel& g, double t, double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = objective(g, t, c), fd = objective(g, t, d);
  for (int i = 0; i < 200 && (b - a) > 1e-14 * b; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(g, t, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(g, t, d);
    }
  }
  return fc > fd ? c : d;
}

RhoResult rho_fallback(const GrowthModel& g, double t) {
  double center = 1.0;
  try {
    center = g.inverse(t);
  } catch (const std::domain_error&) {
  }
  if (!(center > 0) || !std::isfinite(center)) center = 1.0;
  double lo = center * 1e-6, hi = center * 1e6;
  GridScan scan = grid_scan(g, t, lo, hi, 1024);
  double step = std::pow(10.0, 1.0 / 1024.0);
  double r = golden_max(g, t, scan.best_r / step, scan.best_r * step);
  return {r, false};
}

}  // namespace

RhoResult rho(const GrowthModel& g, double t) {
  if (!(t > g.value_at_zero()))
    throw std::domain_error("rho: t must exceed g(0)");
  const double target = std::log(t);
  auto h = [&](double r) { return log_tau(g, r) - target; };

  // bracket by doubling/halving from r = 1, watching tau for monotonicity
  double lo = 1.0, hi = 1.0;
  double h1 = h(1.0);
  bool monotone = true;
  if (h1 < 0) {
    double prev = h1;
    int guard = 0;
    while (h(hi) < 0) {
      double next = h(hi * 2);
      if (next < prev - 1e-12) monotone = false;
      prev = next;
      lo = hi;
      hi *= 2;
      if (++guard > 1100 || !std::isfinite(hi)) return rho_fallback(g, t);
    }
  } else if (h1 > 0) {
    double prev = h1;
    int guard = 0;
    while (h(lo) > 0) {
      double next = h(lo / 2);
      if (next > prev + 1e-12) monotone = false;
      prev = next;
      hi = lo;
      lo /= 2;
      if (++guard > 1100 || lo <= 0) return rho_fallback(g, t);
    }
  } else {
    return {1.0, true};
  }
  if (!monotone) return rho_fallback(g, t);

  // bisect to ~4 digits
  while (hi - lo > 1e-4 * lo) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < 0 ? lo : hi) = mid;
  }

  // Newton, falling back to bisection when a step leaves the bracket
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 100; ++i) {
    double hr = h(r);
    (hr < 0 ? lo : hi) = r;
    double d;
    if (auto analytic = g.dlog_tau(r)) {
      d = *analytic;
    } else {
      double eps = 1e-7 * r;
      d = (h(r + eps) - h(r - eps)) / (2 * eps);
    }
    double next = d > 0 ? r - hr / d : -1.0;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    double step = std::abs(next - r);
    r = next;
    if (step <= 1e-12 * r) break;
  }
  return {r, true};
}

TransformResult u_continuous(const GrowthModel& g, double t,
                             const UContinuousOptions& opt) {
  RhoResult rr = rho(g, t);
  TransformResult out;
  out.argmax_r = rr.r;
  out.value = objective(g, t, rr.r);
  out.certified = rr.root_certified;
  out.tau_non_monotone = !rr.root_certified;

  if (opt.cross_check) {
    GridScan scan = grid_scan(g, t, rr.r * 1e-3, rr.r * 1e3, opt.grid_per_decade);
    double tol = 1e-9 * std::max(std::abs(out.value), 1e-300);
    if (scan.best_val > out.value + tol) {
      // the solved stationary point is not the global sup; trust the scan
      RhoResult fb = rho_fallback(g, t);
      out.argmax_r = fb.r;
      out.value = objective(g, t, fb.r);
      out.certified = false;
      out.tau_non_monotone = true;
    }
  }
  return out;
}

// ------------------------------------------------------------ closed forms

double u_poly_closed(double c, double d, double t) {
  if (!(c > 0) || !(d >= 1) || !(t > 0))
    throw std::invalid_argument("u_poly_closed: need c > 0, d >= 1, t > 0");
  return d * std::pow(c, 1.0 / d) / std::pow(d + 1.0, 1.0 + 1.0 / d) *
         std::pow(t, -1.0 / d);
}

double lambert_f_from_log(double log_x) {
  if (log_x < 1.0 - 1e-9) throw std::domain_error("lambert_f: x < e");
  if (log_x <= 1.0 + 1e-15) return 1.0;
  double y = log_x < 2.0 ? log_x + 1.0 : log_x + std::log(log_x);
  for (int i = 0; i < 200; ++i) {
    double hy = y - std::log(y) - log_x;
    double dy = 1.0 - 1.0 / y;
    if (dy < 1e-300) {
      y = 1.0 + std::sqrt(2.0 * (log_x - 1.0));
      continue;
    }
    double step = hy / dy;
    double next = y - step;
    if (next < 1.0) next = 0.5 * (y + 1.0);  // damping keeps y >= 1
    double moved = std::abs(next - y);
    y = next;
    if (moved <= 1e-14 * y && std::abs(y - std::log(y) - log_x) <= 1e-13 * std::max(1.0, log_x))
      break;
  }
  return y;
}

double lambert_f(double x) {
  if (!(x >= std::exp(1.0) * (1 - 1e-15))) throw std::domain_error("lambert_f: x < e");
  return lambert_f_from_log(std::log(x));
}

double u_stretched_closed(double c, double b, double alpha, double t) {
  if (!(c > 0) || !(b > 0) || !(alpha > 0) || !(alpha <= 1) || !(t > 0))
    throw std::invalid_argument("u_stretched_closed: bad parameters");
  // lam = (alpha/c) e^{1/alpha}, in log form so huge t stays finite
  double log_lam_t = std::log(alpha) - std::log(c) + 1.0 / alpha + std::log(t);
  if (log_lam_t < 1.0 - 1e-12)
    throw std::domain_error("u_stretched_closed: lam * t < e (t too small)");
  if (t < c * (1 - 1e-12))
    throw std::domain_error("u_stretched_closed: t below g(0)");
  double f = lambert_f_from_log(log_lam_t);
  return std::pow(b / f, 1.0 / alpha) *
         std::pow(1.0 - 1.0 / (alpha * f), 1.0 - 1.0 / alpha);
}

double folner_lower_exp(double c, double b, double alpha, double n) {
  if (!(c > 0) || !(b > 0) || !(alpha > 0) || !(alpha <= 1) || !(n >= 1))
    throw std::invalid_argument("folner_lower_exp: bad parameters");
  double lg = std::log(c) - std::log(alpha) - 1.0 - std::log(b) + b * std::pow(n, alpha) -
              alpha * std::log(n);
  return std::exp(lg);
}

// ---------------------------------------------------------------- legendre

LegendreResult legendre(const std::function<double(double)>& f, double y, double x_max) {
  if (!(y >= 0) || !(x_max > 0))
    throw std::invalid_argument("legendre: need y >= 0 and x_max > 0");
  const int n = 4096;
  auto obj = [&](double x) { return y * x - f(x); };
  int best = 0;
  double best_val = obj(0.0);
  for (int i = 1; i <= n; ++i) {
    double v = obj(x_max * i / n);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  LegendreResult out;
  out.edge = (best == n);
  double a = x_max * std::max(0, best - 1) / n;
  double b = x_max * std::min(n, best + 1) / n;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = obj(c), fd = obj(d);
  for (int i = 0; i < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = obj(d);
    }
  }
  double xr = fc > fd ? c : d;
  double vr = std::max(fc, fd);
  if (vr >= best_val) {
    out.argmax_x = xr;
    out.value = vr;
  } else {
    out.argmax_x = x_max * best / n;
    out.value = best_val;
  }
  return out;
}

// -------------------------------------------------------------------- tspg

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0) || !(hi >= lo) || points_per_decade < 1)
    throw std::invalid_argument("log_grid: bad range");
  std::vector<double> out;
  double llo = std::log10(lo), lhi = std::log10(hi);
  int steps = std::max(1, static_cast<int>(std::ceil((lhi - llo) * points_per_decade)));
  out.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i)
    out.push_back(std::pow(10.0, llo + (lhi - llo) * i / steps));
  return out;
}

TspgReport tspg_check(const GrowthModel& g, std::vector<double> lambdas,
                      std::vector<double> r_grid, double t_hi, double t_lo) {
  if (r_grid.size() < 2) throw std::invalid_argument("tspg_check: grid too small");
  std::sort(r_grid.begin(), r_grid.end());
  bool has_one = false;
  for (double l : lambdas) has_one = has_one || std::abs(l - 1.0) < 1e-12;
  if (!has_one) lambdas.push_back(1.0);

  TspgReport rep;
  rep.r_grid = r_grid;
  rep.t_hi = t_hi;
  rep.t_lo = t_lo;
  rep.pass = true;
  const double r_end = r_grid.back();
  for (double lam : lambdas) {
    if (!(lam > 0) || lam > 1.0 + 1e-12)
      throw std::invalid_argument("tspg_check: lambda must lie in (0, 1]");
    TspgSeries s;
    s.lambda = lam;
    for (double r : r_grid)
      s.log_ratio.push_back(std::log(r) + g.log_deriv(r) + g.log_value(lam * r) -
                            2.0 * g.log_value(r));
    // tail checks over the last decade of the grid
    bool is_one = std::abs(lam - 1.0) < 1e-12;
    s.monotone_tail = true;
    double prev = 0;
    bool first = true;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      if (r_grid[i] < r_end / 10) continue;
      if (!first) {
        if (is_one && s.log_ratio[i] < prev - 1e-9) s.monotone_tail = false;
        if (!is_one && s.log_ratio[i] > prev + 1e-9) s.monotone_tail = false;
      }
      prev = s.log_ratio[i];
      first = false;
    }
    s.end_ok = is_one ? s.log_ratio.back() > std::log(t_hi)
                      : s.log_ratio.back() < std::log(t_lo);
    rep.pass = rep.pass && s.end_ok && s.monotone_tail;
    rep.series.push_back(std::move(s));
  }
  return rep;
}

}  // namespace isoperf
