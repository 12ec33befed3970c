#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoperf {

/// Thrown when a computation exceeds a configured resource budget
/// (element caps, enumeration budgets). Carries how far we got.
struct ResourceError : std::runtime_error {
  ResourceError(const std::string& what, std::int64_t reached_)
      : std::runtime_error(what), reached(reached_) {}
  std::int64_t reached;
};

enum class GroupKind {
  Free,         // free group on q generators
  FreeAbelian,  // Z^d
  Dihedral,     // <r,s | r^n, s^2, (rs)^2>, order 2n
  Heisenberg,   // 3x3 upper unitriangular integer matrices
  Lamplighter,  // Z wr Z/2
  CayleyTable,  // explicit finite multiplication table
};

struct GroupSpec {
  GroupKind kind = GroupKind::Free;
  int rank = 1;  // q / d / n depending on kind; unused otherwise

  // CayleyTable only: row-major table[i][j] = index of x_i * x_j, identity = 0,
  // plus the indices of the generating set (must be inverse-closed).
  std::vector<std::vector<int>> table;
  std::vector<int> table_generators;

  static GroupSpec free_group(int q);
  static GroupSpec free_abelian(int d);
  static GroupSpec dihedral(int n);
  static GroupSpec heisenberg();
  static GroupSpec lamplighter();
  static GroupSpec cayley_table(std::vector<std::vector<int>> table,
                                std::vector<int> generators);

  /// Parse `{"kind": "...", "params": {...}}`; cayley_table specs also accept
  /// top-level "table" (row-major indices, identity = 0) and "generators".
  static GroupSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Canonical element encoding. Two encodings are byte-equal iff the group
/// elements are equal, so Element works directly as a map key.
///
/// Per kind: Free = reduced word (letters +-1..+-q); FreeAbelian = d-vector;
/// Dihedral = [rotation, flip]; Heisenberg = [a, b, c] for the matrix with
/// first row (1, a, c) and second row (0, 1, b); Lamplighter = [cursor,
/// lamp positions... (strictly increasing)]; CayleyTable = [index].
class Element {
 public:
  using Code = std::vector<std::int64_t>;

  Element() = default;
  explicit Element(Code code) : code_(std::move(code)) {}

  const Code& code() const { return code_; }

  friend bool operator==(const Element& a, const Element& b) { return a.code_ == b.code_; }
  friend bool operator<(const Element& a, const Element& b) { return a.code_ < b.code_; }

 private:
  Code code_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : e.code()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Symmetric generating set: distinct, inverse-closed, identity-free.
/// inverse_index is the involution pairing each generator with its inverse.
struct GeneratingSet {
  std::vector<Element> elements;
  std::vector<std::size_t> inverse_index;

  std::size_t size() const { return elements.size(); }
};

namespace detail {
struct GroupImpl;
}

/// Immutable handle to a finitely generated group with a fixed symmetric
/// generating set. Cheap to copy; safe to share across threads.
class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec& spec() const;
  GroupKind kind() const;

  bool is_finite() const;
  /// Group order when the family is finite (Dihedral, CayleyTable).
  std::optional<std::int64_t> order() const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;
  const GeneratingSet& generators() const;

  /// Word norm |x| = d(e, x). Closed forms for Free/FreeAbelian; table lookup
  /// for finite kinds; BFS capped at radius_cap otherwise (nullopt when the
  /// cap is exceeded -- a signal, not an answer).
  std::optional<int> word_norm(const Element& x, int radius_cap = 64) const;

 private:
  std::shared_ptr<const detail::GroupImpl> impl_;
};

inline Group build_group(const GroupSpec& spec) { return Group(spec); }

}  // namespace isoperf
