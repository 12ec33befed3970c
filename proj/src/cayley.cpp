#include "isoperf/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isoperf {

std::optional<int> GrowthTable::norm_of(const Element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return norms_[it->second];
}

GrowthTable growth_table(const Group& group, int radius, std::int64_t element_cap) {
  if (radius < 0) throw std::invalid_argument("growth_table: radius must be >= 0");
  GrowthTable t(group);
  t.radius_ = radius;

  std::vector<Element> frontier{group.identity()};
  t.index_.emplace(frontier.front(), 0);
  t.elements_.push_back(frontier.front());
  t.norms_.push_back(0);
  t.gamma_.assign(radius + 1, 0);
  t.gamma_[0] = 1;

  const auto& gens = group.generators().elements;
  std::int64_t total = 1;
  int exhausted_at = -1;  // layer after which the frontier emptied
  for (int r = 1; r <= radius; ++r) {
    std::vector<Element> next;
    for (const Element& x : frontier) {
      for (const Element& s : gens) {
        Element y = group.multiply(s, x);
        if (t.index_.emplace(y, static_cast<int>(t.elements_.size())).second) {
          if (++total > element_cap)
            throw ResourceError("growth_table: element cap exceeded at radius " +
                                    std::to_string(r),
                                r - 1);
          t.elements_.push_back(y);
          t.norms_.push_back(r);
          next.push_back(std::move(y));
        }
      }
    }
    if (next.empty()) {
      exhausted_at = r - 1;
      for (int k = r; k <= radius; ++k) t.gamma_[k] = t.gamma_[r - 1];
      break;
    }
    t.gamma_[r] = t.gamma_[r - 1] + static_cast<std::int64_t>(next.size());
    frontier = std::move(next);
  }

  if (exhausted_at < 0 && radius >= 0) {
    // saturation peek: one more expansion, early-exit on any new element
    bool closed = true;
    for (const Element& x : frontier) {
      for (const Element& s : gens) {
        if (!t.index_.count(group.multiply(s, x))) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) exhausted_at = radius;
  }
  if (exhausted_at >= 0) {
    t.saturated_ = true;
    t.group_order_ = t.gamma_[radius];
    // first radius attaining the full group
    int sr = exhausted_at;
    while (sr > 0 && t.gamma_[sr - 1] == t.gamma_[radius]) --sr;
    t.saturation_radius_ = sr;
  }

  t.sigma_.assign(radius + 1, 0);
  t.sigma_[0] = 1;
  for (int n = 1; n <= radius; ++n) t.sigma_[n] = t.gamma_[n] - t.gamma_[n - 1];
  t.prefix_.assign(radius + 1, 0);
  std::partial_sum(t.gamma_.begin(), t.gamma_.end(), t.prefix_.begin());

  // deterministic ordering: by norm, then canonical code
  std::vector<std::size_t> perm(t.elements_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (t.norms_[a] != t.norms_[b]) return t.norms_[a] < t.norms_[b];
    return t.elements_[a] < t.elements_[b];
  });
  std::vector<Element> se(perm.size());
  std::vector<int> sn(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    se[i] = std::move(t.elements_[perm[i]]);
    sn[i] = t.norms_[perm[i]];
  }
  t.elements_ = std::move(se);
  t.norms_ = std::move(sn);
  t.index_.clear();
  for (std::size_t i = 0; i < t.elements_.size(); ++i)
    t.index_.emplace(t.elements_[i], static_cast<int>(i));
  return t;
}

GrowthTable GrowthTable::truncated(int radius) const {
  if (radius < 0 || radius > radius_)
    throw std::invalid_argument("truncated: radius out of range");
  GrowthTable t(group_);
  t.radius_ = radius;
  t.gamma_.assign(gamma_.begin(), gamma_.begin() + radius + 1);
  t.sigma_.assign(sigma_.begin(), sigma_.begin() + radius + 1);
  t.prefix_.assign(prefix_.begin(), prefix_.begin() + radius + 1);
  if (group_order_ && t.gamma_[radius] == *group_order_) {
    t.saturated_ = true;
    t.group_order_ = group_order_;
    t.saturation_radius_ = saturation_radius_;
  }
  for (std::size_t i = 0; i < elements_.size() && norms_[i] <= radius; ++i) {
    t.elements_.push_back(elements_[i]);
    t.norms_.push_back(norms_[i]);
    t.index_.emplace(elements_[i], static_cast<int>(i));
  }
  return t;
}

std::string GrowthTable::to_csv() const {
  std::string out = "n,gamma,sigma\n";
  for (int n = 0; n <= radius_; ++n) {
    out += std::to_string(n);
    out += ',';
    out += std::to_string(gamma_[n]);
    out += ',';
    out += std::to_string(sigma_[n]);
    out += '\n';
  }
  return out;
}

std::vector<std::int64_t> sphere_sizes(const GrowthTable& table) {
  std::vector<std::int64_t> s(table.radius() + 1);
  for (int n = 0; n <= table.radius(); ++n) s[n] = table.sigma(n);
  return s;
}

namespace {

// least n with cmp(gamma(n)) true, where cmp is monotone in n
template <typename Pred>
InverseGrowth least_radius(const GrowthTable& t, Pred holds, bool at_or_beyond_order) {
  for (int n = 0; n <= t.radius(); ++n)
    if (holds(t.gamma(n))) return {InverseGrowth::Status::Value, n};
  if (t.saturated() && at_or_beyond_order) return {InverseGrowth::Status::Infinite, 0};
  return {InverseGrowth::Status::NeedsLargerRadius, 0};
}

}  // namespace

InverseGrowth inverse_growth(const GrowthTable& table, double t) {
  if (!(t > 0)) throw std::invalid_argument("inverse_growth: t must be > 0");
  bool beyond = table.saturated() &&
                t > static_cast<double>(*table.group_order());
  return least_radius(
      table, [t](std::int64_t g) { return static_cast<double>(g) >= t; }, beyond);
}

InverseGrowth inverse_growth_strict(const GrowthTable& table, double t) {
  if (!(t > 0)) throw std::invalid_argument("inverse_growth_strict: t must be > 0");
  bool beyond = table.saturated() &&
                t >= static_cast<double>(*table.group_order());
  return least_radius(
      table, [t](std::int64_t g) { return static_cast<double>(g) > t; }, beyond);
}

InverseGrowth inverse_growth_rational(const GrowthTable& table, std::int64_t num,
                                      std::int64_t den) {
  if (den <= 0 || num <= 0)
    throw std::invalid_argument("inverse_growth_rational: t must be > 0");
  bool beyond =
      table.saturated() && num > *table.group_order() * den;  // t > |G|
  return least_radius(
      table, [&](std::int64_t g) { return g * den >= num; }, beyond);
}

InverseGrowth inverse_growth_strict_rational(const GrowthTable& table, std::int64_t num,
                                             std::int64_t den) {
  if (den <= 0 || num <= 0)
    throw std::invalid_argument("inverse_growth_strict_rational: t must be > 0");
  bool beyond =
      table.saturated() && num >= *table.group_order() * den;  // t >= |G|
  return least_radius(
      table, [&](std::int64_t g) { return g * den > num; }, beyond);
}

}  // namespace isoperf
