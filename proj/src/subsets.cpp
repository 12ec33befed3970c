#include "isoperf/subsets.hpp"

#include <algorithm>
#include <random>

#include "json.hpp"

namespace isoperf {

FiniteSubset::FiniteSubset(Group group, std::vector<Element> members)
    : group_(std::move(group)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  lookup_.insert(members_.begin(), members_.end());
}

BoundaryData boundary_data(const FiniteSubset& d) {
  const Group& g = d.group();
  const auto& gens = g.generators().elements;
  BoundaryData out;
  std::unordered_set<Element, ElementHash> outer;
  // union-find over member positions for components
  std::vector<int> parent(d.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::unordered_map<Element, int, ElementHash> pos;
  for (std::size_t i = 0; i < d.size(); ++i) pos.emplace(d.members()[i], static_cast<int>(i));

  for (std::size_t i = 0; i < d.size(); ++i) {
    const Element& x = d.members()[i];
    bool is_inner = false;
    for (const Element& s : gens) {
      Element y = g.multiply(s, x);
      auto it = pos.find(y);
      if (it == pos.end()) {
        is_inner = true;
        ++out.edge_count;  // each crossing edge has a unique (x in D, s) pair
        outer.insert(std::move(y));
      } else {
        int ra = find(static_cast<int>(i)), rb = find(it->second);
        if (ra != rb) parent[ra] = rb;
      }
    }
    if (is_inner) out.inner.push_back(x);
  }
  out.outer.assign(outer.begin(), outer.end());
  std::sort(out.outer.begin(), out.outer.end());
  out.components = 0;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++out.components;
  return out;
}

std::vector<Element> inner_boundary(const FiniteSubset& d) { return boundary_data(d).inner; }
std::vector<Element> outer_boundary(const FiniteSubset& d) { return boundary_data(d).outer; }
std::int64_t edge_boundary_count(const FiniteSubset& d) { return boundary_data(d).edge_count; }
int connected_components(const FiniteSubset& d) { return boundary_data(d).components; }

std::int64_t displacement_count(const FiniteSubset& d, const Element& y) {
  const Group& g = d.group();
  std::int64_t n = 0;
  for (const Element& x : d.members())
    if (!d.contains(g.multiply(y, x))) ++n;
  return n;
}

std::string subset_dump_json(const FiniteSubset& d) {
  BoundaryData b = boundary_data(d);
  nlohmann::json j;
  auto codes = nlohmann::json::array();
  for (const Element& x : d.members()) codes.push_back(x.code());
  j["members"] = std::move(codes);
  j["size"] = d.size();
  j["inner_boundary"] = b.inner.size();
  j["outer_boundary"] = b.outer.size();
  j["edge_boundary"] = b.edge_count;
  j["components"] = b.components;
  return j.dump();
}

// ---------------------------------------------------------------- BallGraph

BallGraph::BallGraph(const Group& group, int interior_radius, std::int64_t element_cap)
    : group_(group), interior_radius_(interior_radius) {
  if (interior_radius < 0)
    throw std::invalid_argument("BallGraph: interior radius must be >= 0");
  GrowthTable t = growth_table(group, interior_radius + 1, element_cap);
  elements_ = t.elements();
  norms_ = t.norms();
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    index_.emplace(elements_[i], static_cast<int>(i));
  interior_count_ = 0;
  while (interior_count_ < elements_.size() &&
         norms_[interior_count_] <= interior_radius)
    ++interior_count_;

  const auto& gens = group.generators().elements;
  adj_offset_.assign(elements_.size() + 1, 0);
  adj_.reserve(interior_count_ * gens.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    adj_offset_[i] = adj_.size();
    if (norms_[i] <= interior_radius) {
      std::size_t begin = adj_.size();
      for (const Element& s : gens) {
        auto it = index_.find(group.multiply(s, elements_[i]));
        if (it != index_.end()) adj_.push_back(it->second);
        // neighbors of interior nodes always lie within radius+1, so a miss
        // can only happen for rim nodes, which we skip anyway
      }
      std::sort(adj_.begin() + begin, adj_.end());
    }
  }
  adj_offset_[elements_.size()] = adj_.size();
}

std::optional<int> BallGraph::index_of(const Element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BallGraph::Stats BallGraph::stats(std::span<const int> subset) const {
  Stats st;
  st.size = static_cast<std::int64_t>(subset.size());
  std::vector<int> outer;
  std::vector<int> parent(subset.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < subset.size(); ++i) {
    bool is_inner = false;
    for (int u : neighbors(subset[i])) {
      auto it = std::lower_bound(subset.begin(), subset.end(), u);
      if (it == subset.end() || *it != u) {
        is_inner = true;
        ++st.edges;
        outer.push_back(u);
      } else {
        int ra = find(static_cast<int>(i));
        int rb = find(static_cast<int>(it - subset.begin()));
        if (ra != rb) parent[ra] = rb;
      }
    }
    if (is_inner) ++st.inner;
  }
  std::sort(outer.begin(), outer.end());
  st.outer = std::unique(outer.begin(), outer.end()) - outer.begin();
  st.components = 0;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++st.components;
  return st;
}

FiniteSubset BallGraph::to_subset(std::span<const int> subset) const {
  std::vector<Element> members;
  members.reserve(subset.size());
  for (int idx : subset) members.push_back(elements_[idx]);
  return FiniteSubset(group_, std::move(members));
}

void BallGraph::enumerate_connected(
    int size_max, const std::function<void(std::span<const int>)>& sink) const {
  if (size_max < 1) return;
  // Redelmeier-style growth: candidates are processed in discovery order and
  // a vertex, once passed over at some level, stays excluded below it.
  std::vector<char> seen(node_count(), 0);
  std::vector<int> candidates{identity_index()};
  std::vector<int> current;
  std::vector<int> sorted;
  seen[identity_index()] = 1;

  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    for (std::size_t i = pos; i < candidates.size(); ++i) {
      int v = candidates[i];
      current.push_back(v);
      sorted = current;
      std::sort(sorted.begin(), sorted.end());
      sink(sorted);
      if (static_cast<int>(current.size()) < size_max) {
        std::size_t added_from = candidates.size();
        for (int u : neighbors(v)) {
          if (!seen[u] && norm(u) <= interior_radius_) {
            seen[u] = 1;
            candidates.push_back(u);
          }
        }
        rec(i + 1);
        for (std::size_t k = added_from; k < candidates.size(); ++k) seen[candidates[k]] = 0;
        candidates.resize(added_from);
      }
      current.pop_back();
    }
  };
  rec(0);
}

void enumerate_connected(const Group& group, int size_max, int radius_cap,
                         const std::function<void(const FiniteSubset&)>& sink) {
  if (size_max < 1) throw std::invalid_argument("enumerate_connected: size_max must be >= 1");
  if (radius_cap < size_max - 1)
    throw std::invalid_argument(
        "enumerate_connected: radius_cap must be >= size_max - 1 for completeness");
  BallGraph ball(group, radius_cap);
  ball.enumerate_connected(size_max,
                           [&](std::span<const int> idx) { sink(ball.to_subset(idx)); });
}

FiniteSubset random_connected_subset(const Group& group, int size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("random_connected_subset: size must be >= 1");
  std::mt19937_64 rng(seed);
  std::unordered_set<Element, ElementHash> chosen;
  std::vector<Element> frontier;  // outer boundary, kept sorted
  const auto& gens = group.generators().elements;

  auto absorb = [&](const Element& x) {
    chosen.insert(x);
    for (const Element& s : gens) {
      Element y = group.multiply(s, x);
      if (chosen.count(y)) continue;
      auto it = std::lower_bound(frontier.begin(), frontier.end(), y);
      if (it == frontier.end() || !(*it == y)) frontier.insert(it, std::move(y));
    }
  };
  absorb(group.identity());
  while (static_cast<int>(chosen.size()) < size) {
    if (frontier.empty())
      throw std::invalid_argument("random_connected_subset: size exceeds the group");
    // engine output used directly: std::uniform_int_distribution is not
    // byte-stable across standard libraries
    std::size_t pick = static_cast<std::size_t>(rng() % frontier.size());
    Element x = frontier[pick];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
    absorb(x);
  }
  return FiniteSubset(group, std::vector<Element>(chosen.begin(), chosen.end()));
}

}  // namespace isoperf
