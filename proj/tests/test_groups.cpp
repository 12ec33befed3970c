#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "isoperf/groups.hpp"
#include "oracles.hpp"

using namespace isoperf;

namespace {

std::vector<Group> group_zoo() {
  return {
      build_group(GroupSpec::free_group(2)),
      build_group(GroupSpec::free_abelian(2)),
      build_group(GroupSpec::dihedral(4)),
      build_group(GroupSpec::heisenberg()),
      build_group(GroupSpec::lamplighter()),
  };
}

Element fold(const Group& g, const std::vector<Element>& word) {
  Element acc = g.identity();
  for (const Element& s : word) acc = g.multiply(acc, s);
  return acc;
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

}  // namespace

TEST_CASE("standard generating sets") {
  Group d4 = build_group(GroupSpec::dihedral(4));
  CHECK(d4.is_finite());
  CHECK(*d4.order() == 8);
  CHECK(d4.generators().size() == 3);

  Group f2 = build_group(GroupSpec::free_group(2));
  CHECK(!f2.is_finite());
  CHECK(f2.generators().size() == 4);

  Group z2 = build_group(GroupSpec::free_abelian(2));
  CHECK(z2.generators().size() == 4);
  CHECK(z2.identity().code() == Element::Code{0, 0});

  // r and r^-1 coincide in the order-4 dihedral group's small cousin
  Group d2 = build_group(GroupSpec::dihedral(2));
  CHECK(d2.generators().size() == 2);

  Group ll = build_group(GroupSpec::lamplighter());
  CHECK(ll.generators().size() == 3);
}

TEST_CASE("dihedral relations") {
  Group d4 = build_group(GroupSpec::dihedral(4));
  Element r = d4.generators().elements[0];
  Element s = d4.generators().elements[2];
  Element r3 = d4.multiply(r, d4.multiply(r, r));
  CHECK(d4.multiply(r, s) == d4.multiply(s, r3));  // r s = s r^{4-1}
  Element r4 = d4.multiply(r, r3);
  CHECK(r4 == d4.identity());
  CHECK(d4.multiply(s, s) == d4.identity());
}

TEST_CASE("free group reduction") {
  Group f2 = build_group(GroupSpec::free_group(2));
  Element s1 = f2.generators().elements[0];
  CHECK(f2.multiply(s1, f2.invert(s1)) == f2.identity());
  Element s2 = f2.generators().elements[2];
  Element w = f2.multiply(f2.multiply(s1, s2), f2.invert(s1));
  CHECK(w.code().size() == 3);
}

TEST_CASE("heisenberg multiplication is the matrix product") {
  Group h = build_group(GroupSpec::heisenberg());
  Element x = h.generators().elements[0];
  Element y = h.generators().elements[2];
  CHECK(h.multiply(x, y).code() == Element::Code{1, 1, 1});
  CHECK(h.multiply(y, x).code() == Element::Code{1, 1, 0});
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b') against a 3x3 matrix fold
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto rnd = [&] { return static_cast<std::int64_t>(rng() % 9) - 4; };
    Element p(Element::Code{rnd(), rnd(), rnd()});
    Element q(Element::Code{rnd(), rnd(), rnd()});
    Element prod = h.multiply(p, q);
    const auto &a = p.code(), &b = q.code();
    CHECK(prod.code() ==
          Element::Code{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
    CHECK(h.multiply(prod, h.invert(prod)) == h.identity());
  }
}

TEST_CASE("lamplighter basics") {
  Group ll = build_group(GroupSpec::lamplighter());
  Element shift = ll.generators().elements[0];
  Element lamp = ll.generators().elements[2];
  CHECK(ll.multiply(lamp, lamp) == ll.identity());
  CHECK(ll.multiply(shift, lamp) != ll.multiply(lamp, shift));
  Element w = ll.multiply(shift, lamp);  // lamp lit at 1, cursor at 1
  CHECK(w.code() == Element::Code{1, 1});
  CHECK(ll.multiply(w, ll.invert(w)) == ll.identity());
}

TEST_CASE("word norms") {
  Group z = build_group(GroupSpec::free_abelian(1));
  CHECK(*z.word_norm(Element(Element::Code{-3})) == 3);

  Group f2 = build_group(GroupSpec::free_group(2));
  Element s1 = f2.generators().elements[0];
  Element s2 = f2.generators().elements[2];
  CHECK(*f2.word_norm(f2.multiply(f2.multiply(s1, s2), f2.invert(s1))) == 3);

  Group d4 = build_group(GroupSpec::dihedral(4));
  Element r = d4.generators().elements[0];
  Element s = d4.generators().elements[2];
  Element r2s = d4.multiply(r, d4.multiply(r, s));
  CHECK(*d4.word_norm(r2s) == 3);

  // radius-exceeded is a signal, not an answer
  Group h = build_group(GroupSpec::heisenberg());
  CHECK(!h.word_norm(Element(Element::Code{40, 0, 0}), 5).has_value());
}

TEST_CASE("closed-form norms agree with BFS on a tested prefix") {
  // brute-force: norm = first word-expansion layer where the element appears
  for (const char* kind : {"free", "abelian"}) {
    Group g = kind[0] == 'f' ? build_group(GroupSpec::free_group(2))
                             : build_group(GroupSpec::free_abelian(2));
    std::map<Element::Code, int> oracle;
    std::vector<Element> layer{g.identity()};
    oracle[g.identity().code()] = 0;
    for (int r = 1; r <= 4; ++r) {
      std::vector<Element> next;
      for (const Element& w : layer)
        for (const Element& s : g.generators().elements) {
          Element x = g.multiply(s, w);
          if (oracle.emplace(x.code(), r).second) next.push_back(x);
        }
      layer = std::move(next);
    }
    for (const auto& [code, norm] : oracle)
      CHECK(*g.word_norm(Element(code)) == norm);
  }
}

TEST_CASE("canonical encodings survive refolding" * doctest::timeout(60)) {
  // multiply-folds of a word and of the same word with cancelling pairs
  // spliced in must produce byte-identical encodings
  for (const Group& g : group_zoo()) {
    const auto& gens = g.generators().elements;
    const auto& inv = g.generators().inverse_index;
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10'000; ++trial) {
      std::size_t len = rng() % 10;
      std::vector<Element> word;
      for (std::size_t i = 0; i < len; ++i) word.push_back(gens[rng() % gens.size()]);
      Element direct = fold(g, word);

      std::vector<Element> padded;
      for (const Element& s : word) {
        if (rng() % 3 == 0) {
          std::size_t k = rng() % gens.size();
          padded.push_back(gens[k]);
          padded.push_back(gens[inv[k]]);
        }
        padded.push_back(s);
      }
      CHECK(fold(g, padded).code() == direct.code());

      // associativity of the fold: split at a random point
      std::size_t cut = word.empty() ? 0 : rng() % word.size();
      Element left = fold(g, {word.begin(), word.begin() + cut});
      Element right = fold(g, {word.begin() + cut, word.end()});
      CHECK(g.multiply(left, right).code() == direct.code());
    }
  }
}

TEST_CASE("inversion is an involution and permutes the generating set") {
  for (const Group& g : group_zoo()) {
    const auto& gs = g.generators();
    for (std::size_t i = 0; i < gs.size(); ++i) {
      CHECK(g.invert(gs.elements[i]) == gs.elements[gs.inverse_index[i]]);
      CHECK(gs.inverse_index[gs.inverse_index[i]] == i);
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<Element> word;
      for (std::size_t i = 0, n = rng() % 8; i < n; ++i)
        word.push_back(gs.elements[rng() % gs.size()]);
      Element x = fold(g, word);
      CHECK(g.invert(g.invert(x)) == x);
      // S symmetric: ||x|| = ||x^{-1}||
      auto nx = g.word_norm(x, 16), ni = g.word_norm(g.invert(x), 16);
      REQUIRE(nx.has_value());
      CHECK(*nx == *ni);
    }
  }
}

TEST_CASE("cayley table validation") {
  auto t = cyclic_table(6);
  Group z6 = build_group(GroupSpec::cayley_table(t, {1, 5}));
  CHECK(*z6.order() == 6);
  CHECK(z6.multiply(Element(Element::Code{4}), Element(Element::Code{5})).code() ==
        Element::Code{3});
  CHECK(z6.invert(Element(Element::Code{2})).code() == Element::Code{4});

  // identity must sit at index 0
  auto shifted = cyclic_table(6);
  std::swap(shifted[0], shifted[1]);
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley_table(shifted, {1, 5})),
                       doctest::Contains("identity"), std::invalid_argument);

  // break a row permutation
  auto broken = cyclic_table(6);
  broken[2][3] = broken[2][4];
  CHECK_THROWS_AS(build_group(GroupSpec::cayley_table(broken, {1, 5})),
                  std::invalid_argument);

  // a loop (Latin square with two-sided identity) that is not a group:
  // (1*1)*2 = 2 but 1*(1*2) = 4
  std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 3, 4, 0, 1},
                                        {3, 4, 1, 2, 0},
                                        {4, 2, 0, 1, 3}};
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley_table(loop, {1})),
                       doctest::Contains("associativity"), std::invalid_argument);

  // generators must be inverse-closed (no silent symmetrization)
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley_table(cyclic_table(6), {1})),
                       doctest::Contains("inverse-closed"), std::invalid_argument);

  // and must generate
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley_table(cyclic_table(6), {2, 4})),
                       doctest::Contains("generate"), std::invalid_argument);

  // identity is never a generator
  CHECK_THROWS_AS(build_group(GroupSpec::cayley_table(cyclic_table(6), {0, 1, 5})),
                  std::invalid_argument);
}

TEST_CASE("group spec json round trip") {
  std::vector<GroupSpec> specs = {
      GroupSpec::free_group(3),       GroupSpec::free_abelian(2),
      GroupSpec::dihedral(5),         GroupSpec::heisenberg(),
      GroupSpec::lamplighter(),       GroupSpec::cayley_table(cyclic_table(4), {1, 3}),
  };
  for (const GroupSpec& s : specs) {
    GroupSpec back = GroupSpec::from_json_text(s.to_json_text());
    CHECK(back.kind == s.kind);
    CHECK(back.table == s.table);
    CHECK(back.table_generators == s.table_generators);
    Group g = build_group(back);
    CHECK(g.identity() == build_group(s).identity());
  }
  CHECK_THROWS_AS(GroupSpec::from_json_text(R"({"kind":"nope","params":{}})"),
                  std::invalid_argument);
  GroupSpec f = GroupSpec::from_json_text(R"({"kind":"free","params":{"q":2}})");
  CHECK(f.rank == 2);
}
