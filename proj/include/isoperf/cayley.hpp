#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isoperf/groups.hpp"

namespace isoperf {

/// Exact ball census gamma(0..R) with sphere sizes and prefix sums.
/// Ball membership (element -> word norm) is retained for reuse.
class GrowthTable {
 public:
  int radius() const { return radius_; }
  std::int64_t gamma(int n) const { return gamma_.at(n); }
  std::int64_t sigma(int n) const { return sigma_.at(n); }
  /// prefix(n) = sum_{k<=n} gamma(k)
  std::int64_t prefix(int n) const { return prefix_.at(n); }
  const std::vector<std::int64_t>& gamma_all() const { return gamma_; }

  /// True iff the ball census is known to have exhausted a finite group.
  bool saturated() const { return saturated_; }
  std::optional<std::int64_t> group_order() const { return group_order_; }
  std::optional<int> saturation_radius() const { return saturation_radius_; }

  const Group& group() const { return group_; }

  /// Ball elements sorted by (norm, code); norms() is parallel to elements().
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<int>& norms() const { return norms_; }
  std::optional<int> norm_of(const Element& x) const;

  /// Same census truncated to a smaller radius.
  GrowthTable truncated(int radius) const;

  /// Columns `n,gamma,sigma`, exact integers.
  std::string to_csv() const;

  friend GrowthTable growth_table(const Group&, int, std::int64_t);

 private:
  explicit GrowthTable(Group g) : group_(std::move(g)) {}

  Group group_;
  int radius_ = 0;
  bool saturated_ = false;
  std::optional<std::int64_t> group_order_;
  std::optional<int> saturation_radius_;
  std::vector<std::int64_t> gamma_, sigma_, prefix_;
  std::vector<Element> elements_;
  std::vector<int> norms_;
  std::unordered_map<Element, int, ElementHash> index_;
};

/// BFS ball census out to the requested radius. Throws ResourceError (with
/// the radius reached) if the ball would exceed element_cap elements.
GrowthTable growth_table(const Group& group, int radius,
                         std::int64_t element_cap = 4'000'000);

std::vector<std::int64_t> sphere_sizes(const GrowthTable& table);

/// Three-way inverse growth result: a finite truncation of possibly infinite
/// data can answer "n", "infinite", or "not determined at this radius".
struct InverseGrowth {
  enum class Status { Value, Infinite, NeedsLargerRadius };
  Status status = Status::Value;
  int n = 0;

  bool is_value() const { return status == Status::Value; }
  bool is_infinite() const { return status == Status::Infinite; }
};

/// phi(t): least n with gamma(n) >= t (t > 0).
InverseGrowth inverse_growth(const GrowthTable& table, double t);
/// phi~(t): least n with gamma(n) > t.
InverseGrowth inverse_growth_strict(const GrowthTable& table, double t);

/// Exact variants for rational t = num/den (den > 0).
InverseGrowth inverse_growth_rational(const GrowthTable& table, std::int64_t num,
                                      std::int64_t den);
InverseGrowth inverse_growth_strict_rational(const GrowthTable& table, std::int64_t num,
                                             std::int64_t den);

}  // namespace isoperf
