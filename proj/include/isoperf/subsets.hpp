#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "isoperf/cayley.hpp"
#include "isoperf/groups.hpp"

namespace isoperf {

/// A finite set of elements of one group. Members are kept sorted by
/// canonical code; construction dedups.
class FiniteSubset {
 public:
  FiniteSubset(Group group, std::vector<Element> members);

  const Group& group() const { return group_; }
  const std::vector<Element>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Element& x) const { return lookup_.count(x) > 0; }

 private:
  Group group_;
  std::vector<Element> members_;
  std::unordered_set<Element, ElementHash> lookup_;
};

/// All boundary notions of one subset, computed in one pass.
/// Boundaries use left multiplication throughout: x is inner boundary iff
/// some s in S has sx outside D. (Several texts use the opposite side; with
/// the right-invariant word metric this is the consistent choice.)
struct BoundaryData {
  std::vector<Element> inner;  // sorted
  std::vector<Element> outer;  // sorted
  std::int64_t edge_count = 0;
  int components = 1;
};

BoundaryData boundary_data(const FiniteSubset& d);
std::vector<Element> inner_boundary(const FiniteSubset& d);
std::vector<Element> outer_boundary(const FiniteSubset& d);
std::int64_t edge_boundary_count(const FiniteSubset& d);
int connected_components(const FiniteSubset& d);

/// |{x in D : yx not in D}|
std::int64_t displacement_count(const FiniteSubset& d, const Element& y);

/// JSON dump: canonical member encodings plus boundary statistics.
std::string subset_dump_json(const FiniteSubset& d);

/// Indexed view of a word-metric ball, with complete adjacency for every
/// node of norm <= interior_radius (nodes one layer further are present so
/// outer boundaries are exact). Index order is (norm, code).
class BallGraph {
 public:
  BallGraph(const Group& group, int interior_radius,
            std::int64_t element_cap = 4'000'000);

  const Group& group() const { return group_; }
  int interior_radius() const { return interior_radius_; }
  std::size_t node_count() const { return elements_.size(); }
  std::size_t interior_count() const { return interior_count_; }
  const Element& element(int idx) const { return elements_[idx]; }
  int norm(int idx) const { return norms_[idx]; }
  std::span<const int> neighbors(int idx) const {
    return {adj_.data() + adj_offset_[idx], adj_offset_[idx + 1] - adj_offset_[idx]};
  }
  std::optional<int> index_of(const Element& x) const;
  int identity_index() const { return 0; }

  struct Stats {
    std::int64_t size = 0;
    std::int64_t inner = 0;
    std::int64_t outer = 0;
    std::int64_t edges = 0;
    int components = 0;
  };
  /// Boundary statistics for a strictly increasing index list whose members
  /// all have norm <= interior_radius.
  Stats stats(std::span<const int> subset) const;

  FiniteSubset to_subset(std::span<const int> subset) const;

  /// Every connected subset containing the identity, of size <= size_max,
  /// each exactly once, in a deterministic order. Indices passed to the sink
  /// are sorted ascending.
  void enumerate_connected(int size_max,
                           const std::function<void(std::span<const int>)>& sink) const;

 private:
  Group group_;
  int interior_radius_;
  std::size_t interior_count_;
  std::vector<Element> elements_;
  std::vector<int> norms_;
  std::vector<int> adj_;
  std::vector<std::size_t> adj_offset_;
  std::unordered_map<Element, int, ElementHash> index_;
};

/// Streams every connected subset of size <= size_max containing the
/// identity, all members within word norm <= radius_cap. Completeness
/// requires radius_cap >= size_max - 1 (enforced).
void enumerate_connected(const Group& group, int size_max, int radius_cap,
                         const std::function<void(const FiniteSubset&)>& sink);

/// Connected subset containing the identity, grown by uniform frontier
/// choice; deterministic for a fixed seed.
FiniteSubset random_connected_subset(const Group& group, int size, std::uint64_t seed);

}  // namespace isoperf
