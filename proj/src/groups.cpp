#include "isoperf/groups.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace isoperf {

// ---------------------------------------------------------------- GroupSpec

GroupSpec GroupSpec::free_group(int q) {
  if (q < 1) throw std::invalid_argument("free group rank must be >= 1");
  GroupSpec s;
  s.kind = GroupKind::Free;
  s.rank = q;
  return s;
}

GroupSpec GroupSpec::free_abelian(int d) {
  if (d < 1) throw std::invalid_argument("free abelian rank must be >= 1");
  GroupSpec s;
  s.kind = GroupKind::FreeAbelian;
  s.rank = d;
  return s;
}

GroupSpec GroupSpec::dihedral(int n) {
  if (n < 2) throw std::invalid_argument("dihedral parameter must be >= 2");
  GroupSpec s;
  s.kind = GroupKind::Dihedral;
  s.rank = n;
  return s;
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec s;
  s.kind = GroupKind::Heisenberg;
  return s;
}

GroupSpec GroupSpec::lamplighter() {
  GroupSpec s;
  s.kind = GroupKind::Lamplighter;
  return s;
}

GroupSpec GroupSpec::cayley_table(std::vector<std::vector<int>> table,
                                  std::vector<int> generators) {
  GroupSpec s;
  s.kind = GroupKind::CayleyTable;
  s.table = std::move(table);
  s.table_generators = std::move(generators);
  s.rank = static_cast<int>(s.table.size());
  return s;
}

namespace {

void validate_cayley_table(const GroupSpec& spec) {
  const auto& t = spec.table;
  const int n = static_cast<int>(t.size());
  if (n < 1) throw std::invalid_argument("cayley_table: empty table");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("cayley_table: table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw std::invalid_argument("cayley_table: entry out of range");
  }
  // identity at index 0
  for (int j = 0; j < n; ++j)
    if (t[0][j] != j || t[j][0] != j)
      throw std::invalid_argument("cayley_table: index 0 is not a two-sided identity");
  // rows and columns are permutations
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (seen_row[t[i][j]]++)
        throw std::invalid_argument("cayley_table: row " + std::to_string(i) +
                                    " is not a permutation");
      if (seen_col[t[j][i]]++)
        throw std::invalid_argument("cayley_table: column " + std::to_string(i) +
                                    " is not a permutation");
    }
  }
  // associativity
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (t[t[i][j]][k] != t[i][t[j][k]])
          throw std::invalid_argument("cayley_table: associativity fails at (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
  // generators: valid, identity-free, distinct, inverse-closed, generating
  const auto& gens = spec.table_generators;
  if (gens.empty() && n > 1)
    throw std::invalid_argument("cayley_table: generating set is empty");
  std::set<int> gset;
  for (int g : gens) {
    if (g <= 0 || g >= n)
      throw std::invalid_argument("cayley_table: generator index out of range or identity");
    if (!gset.insert(g).second)
      throw std::invalid_argument("cayley_table: duplicate generator index");
  }
  for (int g : gens) {
    int inv = -1;
    for (int j = 0; j < n; ++j)
      if (t[g][j] == 0) {
        inv = j;
        break;
      }
    if (!gset.count(inv))
      throw std::invalid_argument("cayley_table: generating set is not inverse-closed");
  }
  // reachability
  std::vector<char> reach(n, 0);
  reach[0] = 1;
  std::queue<int> q;
  q.push(0);
  int count = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int g : gens) {
      int y = t[g][x];
      if (!reach[y]) {
        reach[y] = 1;
        ++count;
        q.push(y);
      }
    }
  }
  if (count != n)
    throw std::invalid_argument("cayley_table: generators do not generate the group");
}

}  // namespace

// ---------------------------------------------------------------- JSON I/O

GroupSpec GroupSpec::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  nlohmann::json params = j.value("params", nlohmann::json::object());
  if (kind == "free") return free_group(params.at("q").get<int>());
  if (kind == "free_abelian") return free_abelian(params.at("d").get<int>());
  if (kind == "dihedral") return dihedral(params.at("n").get<int>());
  if (kind == "heisenberg") return heisenberg();
  if (kind == "lamplighter") return lamplighter();
  if (kind == "cayley_table") {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    auto gens = j.at("generators").get<std::vector<int>>();
    return cayley_table(std::move(table), std::move(gens));
  }
  throw std::invalid_argument("unknown group kind: " + kind);
}

std::string GroupSpec::to_json_text() const {
  nlohmann::json j;
  switch (kind) {
    case GroupKind::Free:
      j["kind"] = "free";
      j["params"] = {{"q", rank}};
      break;
    case GroupKind::FreeAbelian:
      j["kind"] = "free_abelian";
      j["params"] = {{"d", rank}};
      break;
    case GroupKind::Dihedral:
      j["kind"] = "dihedral";
      j["params"] = {{"n", rank}};
      break;
    case GroupKind::Heisenberg:
      j["kind"] = "heisenberg";
      j["params"] = nlohmann::json::object();
      break;
    case GroupKind::Lamplighter:
      j["kind"] = "lamplighter";
      j["params"] = nlohmann::json::object();
      break;
    case GroupKind::CayleyTable:
      j["kind"] = "cayley_table";
      j["params"] = {{"order", static_cast<int>(table.size())}};
      j["table"] = table;
      j["generators"] = table_generators;
      break;
  }
  return j.dump();
}

// ---------------------------------------------------------------- GroupImpl

namespace detail {

struct GroupImpl {
  GroupSpec spec;
  GeneratingSet gens;
  std::optional<std::int64_t> order;
  std::vector<int> finite_norms;  // indexed element -> word norm (finite kinds)

  explicit GroupImpl(GroupSpec s);

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;

  // Dense index for finite kinds.
  std::int64_t element_index(const Element& x) const {
    switch (spec.kind) {
      case GroupKind::Dihedral:
        return x.code()[0] + spec.rank * x.code()[1];
      case GroupKind::CayleyTable:
        return x.code()[0];
      default:
        return -1;
    }
  }
};

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Element make(std::initializer_list<std::int64_t> v) { return Element(Element::Code(v)); }

}  // namespace

Element GroupImpl::identity() const {
  switch (spec.kind) {
    case GroupKind::Free:
      return Element(Element::Code{});
    case GroupKind::FreeAbelian:
      return Element(Element::Code(spec.rank, 0));
    case GroupKind::Dihedral:
      return make({0, 0});
    case GroupKind::Heisenberg:
      return make({0, 0, 0});
    case GroupKind::Lamplighter:
      return make({0});
    case GroupKind::CayleyTable:
      return make({0});
  }
  throw std::logic_error("unreachable");
}

Element GroupImpl::multiply(const Element& ea, const Element& eb) const {
  const auto& a = ea.code();
  const auto& b = eb.code();
  switch (spec.kind) {
    case GroupKind::Free: {
      // concatenate and cancel at the seam; inputs are reduced
      Element::Code out(a);
      for (std::int64_t letter : b) {
        if (!out.empty() && out.back() == -letter)
          out.pop_back();
        else
          out.push_back(letter);
      }
      return Element(std::move(out));
    }
    case GroupKind::FreeAbelian: {
      Element::Code out(a);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
      return Element(std::move(out));
    }
    case GroupKind::Dihedral: {
      const std::int64_t n = spec.rank;
      std::int64_t rot = mod(a[0] + (a[1] ? -b[0] : b[0]), n);
      return make({rot, a[1] ^ b[1]});
    }
    case GroupKind::Heisenberg:
      return make({a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
    case GroupKind::Lamplighter: {
      // code = [cursor, sorted lamp positions...]; product shifts the right
      // factor's lamps by the left cursor and takes the symmetric difference
      std::int64_t cursor = a[0] + b[0];
      std::vector<std::int64_t> lamps(a.begin() + 1, a.end());
      std::set<std::int64_t> lamp_set(lamps.begin(), lamps.end());
      for (std::size_t i = 1; i < b.size(); ++i) {
        std::int64_t p = b[i] + a[0];
        auto it = lamp_set.find(p);
        if (it != lamp_set.end())
          lamp_set.erase(it);
        else
          lamp_set.insert(p);
      }
      Element::Code out;
      out.reserve(1 + lamp_set.size());
      out.push_back(cursor);
      out.insert(out.end(), lamp_set.begin(), lamp_set.end());
      return Element(std::move(out));
    }
    case GroupKind::CayleyTable:
      return make({spec.table[a[0]][b[0]]});
  }
  throw std::logic_error("unreachable");
}

Element GroupImpl::invert(const Element& ea) const {
  const auto& a = ea.code();
  switch (spec.kind) {
    case GroupKind::Free: {
      Element::Code out(a.rbegin(), a.rend());
      for (auto& letter : out) letter = -letter;
      return Element(std::move(out));
    }
    case GroupKind::FreeAbelian: {
      Element::Code out(a);
      for (auto& v : out) v = -v;
      return Element(std::move(out));
    }
    case GroupKind::Dihedral:
      return a[1] ? Element(a) : make({mod(-a[0], spec.rank), 0});
    case GroupKind::Heisenberg:
      return make({-a[0], -a[1], a[0] * a[1] - a[2]});
    case GroupKind::Lamplighter: {
      Element::Code out;
      out.reserve(a.size());
      out.push_back(-a[0]);
      for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] - a[0]);
      std::sort(out.begin() + 1, out.end());
      return Element(std::move(out));
    }
    case GroupKind::CayleyTable: {
      const auto& row = spec.table[a[0]];
      for (int j = 0; j < static_cast<int>(row.size()); ++j)
        if (row[j] == 0) return make({j});
      throw std::logic_error("cayley_table: no inverse");
    }
  }
  throw std::logic_error("unreachable");
}

GroupImpl::GroupImpl(GroupSpec s) : spec(std::move(s)) {
  switch (spec.kind) {
    case GroupKind::Free:
      if (spec.rank < 1) throw std::invalid_argument("free group rank must be >= 1");
      break;
    case GroupKind::FreeAbelian:
      if (spec.rank < 1) throw std::invalid_argument("free abelian rank must be >= 1");
      break;
    case GroupKind::Dihedral:
      if (spec.rank < 2) throw std::invalid_argument("dihedral parameter must be >= 2");
      order = 2 * static_cast<std::int64_t>(spec.rank);
      break;
    case GroupKind::Heisenberg:
    case GroupKind::Lamplighter:
      break;
    case GroupKind::CayleyTable:
      validate_cayley_table(spec);
      order = static_cast<std::int64_t>(spec.table.size());
      break;
  }

  // standard generating sets; axis (infinite-order) generator first where one exists
  std::vector<Element> g;
  switch (spec.kind) {
    case GroupKind::Free:
      for (int i = 1; i <= spec.rank; ++i) {
        g.push_back(make({i}));
        g.push_back(make({-i}));
      }
      break;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < spec.rank; ++i) {
        Element::Code plus(spec.rank, 0), minus(spec.rank, 0);
        plus[i] = 1;
        minus[i] = -1;
        g.push_back(Element(plus));
        g.push_back(Element(minus));
      }
      break;
    case GroupKind::Dihedral:
      g.push_back(make({1, 0}));
      if (spec.rank > 2) g.push_back(make({spec.rank - 1, 0}));  // r == r^-1 when n = 2
      g.push_back(make({0, 1}));
      break;
    case GroupKind::Heisenberg:
      g = {make({1, 0, 0}), make({-1, 0, 0}), make({0, 1, 0}), make({0, -1, 0})};
      break;
    case GroupKind::Lamplighter:
      g = {make({1}), make({-1}), make({0, 0})};
      break;
    case GroupKind::CayleyTable:
      for (int idx : spec.table_generators) g.push_back(make({idx}));
      break;
  }
  gens.elements = std::move(g);
  gens.inverse_index.resize(gens.elements.size());
  for (std::size_t i = 0; i < gens.elements.size(); ++i) {
    Element inv = invert(gens.elements[i]);
    auto it = std::find(gens.elements.begin(), gens.elements.end(), inv);
    if (it == gens.elements.end())
      throw std::invalid_argument("generating set is not inverse-closed");
    gens.inverse_index[i] = static_cast<std::size_t>(it - gens.elements.begin());
  }

  // precompute word norms for finite kinds (graph is small)
  if (order) {
    finite_norms.assign(static_cast<std::size_t>(*order), -1);
    std::queue<Element> q;
    Element e = identity();
    finite_norms[element_index(e)] = 0;
    q.push(e);
    while (!q.empty()) {
      Element x = q.front();
      q.pop();
      int dx = finite_norms[element_index(x)];
      for (const Element& s : gens.elements) {
        Element y = multiply(s, x);
        auto& dy = finite_norms[element_index(y)];
        if (dy < 0) {
          dy = dx + 1;
          q.push(y);
        }
      }
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------- Group

Group::Group(GroupSpec spec) : impl_(std::make_shared<detail::GroupImpl>(std::move(spec))) {}

const GroupSpec& Group::spec() const { return impl_->spec; }
GroupKind Group::kind() const { return impl_->spec.kind; }
bool Group::is_finite() const { return impl_->order.has_value(); }
std::optional<std::int64_t> Group::order() const { return impl_->order; }
Element Group::identity() const { return impl_->identity(); }
Element Group::multiply(const Element& a, const Element& b) const {
  return impl_->multiply(a, b);
}
Element Group::invert(const Element& a) const { return impl_->invert(a); }
const GeneratingSet& Group::generators() const { return impl_->gens; }

std::optional<int> Group::word_norm(const Element& x, int radius_cap) const {
  switch (kind()) {
    case GroupKind::Free:
      return static_cast<int>(x.code().size());
    case GroupKind::FreeAbelian: {
      std::int64_t n = 0;
      for (std::int64_t v : x.code()) n += v < 0 ? -v : v;
      return static_cast<int>(n);
    }
    case GroupKind::Dihedral:
    case GroupKind::CayleyTable:
      return impl_->finite_norms[impl_->element_index(x)];
    default:
      break;
  }
  // BFS out to radius_cap
  if (x == identity()) return 0;
  std::unordered_map<Element, int, ElementHash> dist;
  std::vector<Element> frontier{identity()};
  dist.emplace(frontier.front(), 0);
  for (int r = 1; r <= radius_cap; ++r) {
    std::vector<Element> next;
    for (const Element& v : frontier) {
      for (const Element& s : impl_->gens.elements) {
        Element y = impl_->multiply(s, v);
        if (dist.emplace(y, r).second) {
          if (y == x) return r;
          next.push_back(std::move(y));
        }
      }
    }
    if (next.empty()) return std::nullopt;  // exhausted without finding x
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace isoperf
