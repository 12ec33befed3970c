#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "isoperf/groups.hpp"

namespace oracles {

// Census of distinct elements reachable by generator words of length <= R,
// by brute-force word expansion (no BFS, no norm bookkeeping).
inline std::vector<std::int64_t> word_expansion_census(const isoperf::Group& g, int R) {
  using isoperf::Element;
  std::set<Element::Code> seen;
  std::vector<Element> layer{g.identity()};
  seen.insert(g.identity().code());
  std::vector<std::int64_t> gamma{1};
  for (int r = 1; r <= R; ++r) {
    std::vector<Element> next;
    for (const Element& w : layer)
      for (const Element& s : g.generators().elements) {
        Element x = g.multiply(s, w);
        if (seen.insert(x.code()).second) next.push_back(x);
      }
    // every word of length r is s * (word of length r-1), so expanding the
    // previous layer covers all words of length <= r
    gamma.push_back(static_cast<std::int64_t>(seen.size()));
    layer = std::move(next);
  }
  return gamma;
}

// gamma(n) = (q (2q-1)^n - 1) / (q - 1) for the free group on q generators.
inline std::int64_t free_growth_closed_form(int q, int n) {
  std::int64_t pow = 1;
  for (int i = 0; i < n; ++i) pow *= 2 * q - 1;
  return (q * pow - 1) / (q - 1);
}

// Number of connected n-vertex subsets of the 2q-regular tree containing a
// fixed root, via the branch-composition recurrence.
inline std::vector<std::int64_t> tree_subtree_counts(int q, int n_max) {
  int dirs = 2 * q - 1;
  std::vector<std::int64_t> b{1};  // branch trees by vertex count
  for (int n = 1; n <= n_max; ++n) {
    // b[n] = sum over compositions of n-1 into `dirs` parts of prod b[part]
    std::vector<std::int64_t> conv{1};
    for (int d = 0; d < dirs; ++d) {
      std::vector<std::int64_t> next(n, 0);
      for (int i = 0; i < static_cast<int>(conv.size()); ++i)
        for (int j = 0; i + j < n && j <= n_max; ++j)
          if (j < static_cast<int>(b.size())) next[i + j] += conv[i] * b[j];
      conv = std::move(next);
    }
    b.push_back(n - 1 < static_cast<int>(conv.size()) ? conv[n - 1] : 0);
  }
  std::vector<std::int64_t> total(n_max + 1, 0);
  std::vector<std::int64_t> conv{1};
  for (int d = 0; d < 2 * q; ++d) {
    std::vector<std::int64_t> next(n_max + 1, 0);
    for (int i = 0; i < static_cast<int>(conv.size()); ++i)
      for (int j = 0; i + j <= n_max; ++j)
        if (j < static_cast<int>(b.size())) next[i + j] += conv[i] * b[j];
    conv = std::move(next);
  }
  for (int n = 1; n <= n_max; ++n) total[n] = conv[n - 1];
  return total;
}

}  // namespace oracles
