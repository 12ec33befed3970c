#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "isoperf/subsets.hpp"
#include "oracles.hpp"

#include "json.hpp"

using namespace isoperf;

namespace {

FiniteSubset interval(const Group& z, std::int64_t lo, std::int64_t hi) {
  std::vector<Element> m;
  for (std::int64_t v = lo; v <= hi; ++v) m.push_back(Element(Element::Code{v}));
  return FiniteSubset(z, std::move(m));
}

std::vector<Element> whole_group(const Group& g) {
  GrowthTable t = growth_table(g, 64);
  REQUIRE(t.saturated());
  return t.elements();
}

}  // namespace

TEST_CASE("inner boundary") {
  Group d4 = build_group(GroupSpec::dihedral(4));
  FiniteSubset all(d4, whole_group(d4));
  CHECK(inner_boundary(all).empty());
  CHECK(edge_boundary_count(all) == 0);

  Group z = build_group(GroupSpec::free_abelian(1));
  FiniteSubset d = interval(z, 0, 4);
  auto inner = inner_boundary(d);
  REQUIRE(inner.size() == 2);
  CHECK(inner[0].code() == Element::Code{0});
  CHECK(inner[1].code() == Element::Code{4});

  Group f2 = build_group(GroupSpec::free_group(2));
  Element s1 = f2.generators().elements[0];
  FiniteSubset path(f2, {f2.identity(), s1, f2.multiply(s1, s1)});
  CHECK(inner_boundary(path).size() == 3);  // every tree vertex sees outside
}

TEST_CASE("outer boundary") {
  Group f2 = build_group(GroupSpec::free_group(2));
  FiniteSubset singleton(f2, {f2.identity()});
  CHECK(outer_boundary(singleton).size() == 4);  // 2q neighbors

  Element s1 = f2.generators().elements[0];
  FiniteSubset path(f2, {f2.identity(), s1, f2.multiply(s1, s1)});
  CHECK(outer_boundary(path).size() == 8);  // (2q-2)|D| + 2

  Group z = build_group(GroupSpec::free_abelian(1));
  auto outer = outer_boundary(interval(z, 0, 4));
  REQUIRE(outer.size() == 2);
  CHECK(outer[0].code() == Element::Code{-1});
  CHECK(outer[1].code() == Element::Code{5});
}

TEST_CASE("edge boundary counts simple crossing edges") {
  Group z = build_group(GroupSpec::free_abelian(1));
  CHECK(edge_boundary_count(interval(z, 0, 4)) == 2);

  // a 4-cycle face of the dihedral cube: one perpendicular edge per vertex
  Group d4 = build_group(GroupSpec::dihedral(4));
  Element e = d4.identity();
  Element r(Element::Code{1, 0}), s(Element::Code{0, 1}), r3s(Element::Code{3, 1});
  FiniteSubset face(d4, {e, r, s, r3s});
  CHECK(connected_components(face) == 1);
  CHECK(edge_boundary_count(face) == 4);
}

TEST_CASE("connected components") {
  Group z = build_group(GroupSpec::free_abelian(1));
  FiniteSubset two(z, {Element(Element::Code{0}), Element(Element::Code{1}),
                       Element(Element::Code{5}), Element(Element::Code{6})});
  CHECK(connected_components(two) == 2);

  Group f2 = build_group(GroupSpec::free_group(2));
  CHECK(connected_components(FiniteSubset(f2, {f2.identity()})) == 1);

  // edges join x and sx (left multiplication): s2*s1 is one step from s1,
  // while s1*s2 is not -- the convention matters
  Element s1 = f2.generators().elements[0];
  Element s2 = f2.generators().elements[2];
  FiniteSubset left(f2, {f2.identity(), s1, f2.multiply(s2, s1)});
  CHECK(connected_components(left) == 1);
  FiniteSubset right(f2, {f2.identity(), s1, f2.multiply(s1, s2)});
  CHECK(connected_components(right) == 2);
}

TEST_CASE("displacement counts") {
  Group z = build_group(GroupSpec::free_abelian(1));
  FiniteSubset d = interval(z, 0, 4);
  CHECK(displacement_count(d, z.identity()) == 0);
  CHECK(displacement_count(d, Element(Element::Code{1})) == 1);
  CHECK(displacement_count(d, Element(Element::Code{3})) == 3);
}

TEST_CASE("displacement bound |{x : yx outside}| <= ||y|| |inner|") {
  std::vector<Group> zoo = {
      build_group(GroupSpec::free_abelian(2)),
      build_group(GroupSpec::free_group(2)),
      build_group(GroupSpec::dihedral(4)),
      build_group(GroupSpec::heisenberg()),
  };
  for (const Group& g : zoo) {
    GrowthTable ball = growth_table(g, 4);
    std::vector<FiniteSubset> family;
    enumerate_connected(g, 4, 3,
                        [&](const FiniteSubset& d) { family.push_back(d); });
    int big = g.is_finite() ? static_cast<int>(*g.order()) : 9;
    for (int seed = 0; seed < 10; ++seed)
      family.push_back(random_connected_subset(g, big, seed));
    for (const FiniteSubset& d : family) {
      std::int64_t inner = static_cast<std::int64_t>(inner_boundary(d).size());
      for (std::size_t i = 0; i < ball.elements().size(); ++i) {
        CHECK(displacement_count(d, ball.elements()[i]) <=
              static_cast<std::int64_t>(ball.norms()[i]) * inner);
      }
    }
  }
}

TEST_CASE("boundary sandwich on enumerated families") {
  std::vector<Group> zoo = {
      build_group(GroupSpec::free_abelian(2)),
      build_group(GroupSpec::free_group(2)),
      build_group(GroupSpec::dihedral(4)),
  };
  for (const Group& g : zoo) {
    std::int64_t degree = static_cast<std::int64_t>(g.generators().size());
    enumerate_connected(g, 5, 4, [&](const FiniteSubset& d) {
      BoundaryData b = boundary_data(d);
      std::int64_t inner = b.inner.size(), outer = b.outer.size();
      CHECK(std::max(inner, outer) <= b.edge_count);
      CHECK(b.edge_count <= degree * std::min(inner, outer));
    });
  }
}

TEST_CASE("boundaries add over far-apart components") {
  Group z2 = build_group(GroupSpec::free_abelian(2));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteSubset a = random_connected_subset(z2, 1 + rng() % 6, trial);
    FiniteSubset b = random_connected_subset(z2, 1 + rng() % 6, trial + 1000);
    std::vector<Element> shifted;
    for (const Element& x : b.members())
      shifted.push_back(z2.multiply(x, Element(Element::Code{50, 0})));
    std::vector<Element> all = a.members();
    all.insert(all.end(), shifted.begin(), shifted.end());
    FiniteSubset u(z2, all);
    BoundaryData ba = boundary_data(a), bb = boundary_data(b), bu = boundary_data(u);
    CHECK(bu.inner.size() == ba.inner.size() + bb.inner.size());
    CHECK(bu.edge_count == ba.edge_count + bb.edge_count);
    CHECK(bu.components == ba.components + bb.components);
  }
}

TEST_CASE("connected enumeration: line and lattice") {
  Group z = build_group(GroupSpec::free_abelian(1));
  int exactly3 = 0, total = 0;
  enumerate_connected(z, 3, 2, [&](const FiniteSubset& d) {
    ++total;
    if (d.size() == 3) ++exactly3;
    CHECK(d.contains(z.identity()));
  });
  CHECK(exactly3 == 3);  // the three intervals through 0
  CHECK(total == 6);

  Group z2 = build_group(GroupSpec::free_abelian(2));
  std::map<std::size_t, std::int64_t> by_size;
  std::set<std::vector<Element::Code>> distinct;
  enumerate_connected(z2, 5, 4, [&](const FiniteSubset& d) {
    ++by_size[d.size()];
    std::vector<Element::Code> key;
    for (const Element& x : d.members()) key.push_back(x.code());
    CHECK(distinct.insert(key).second);  // exactly-once
    CHECK(connected_components(d) == 1);
  });
  // n * (fixed polyominoes with n cells): 1, 2, 6, 19, 63
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 4);
  CHECK(by_size[3] == 18);
  CHECK(by_size[4] == 76);
  CHECK(by_size[5] == 315);
}

TEST_CASE("connected enumeration matches the tree recurrence") {
  for (int q = 2; q <= 3; ++q) {
    Group fq = build_group(GroupSpec::free_group(q));
    std::map<std::size_t, std::int64_t> by_size;
    enumerate_connected(fq, 6, 5,
                        [&](const FiniteSubset& d) { ++by_size[d.size()]; });
    auto oracle = oracles::tree_subtree_counts(q, 6);
    for (int n = 1; n <= 6; ++n) CHECK(by_size[n] == oracle[n]);
  }
}

TEST_CASE("enumeration cap precondition") {
  Group z = build_group(GroupSpec::free_abelian(1));
  CHECK_THROWS_AS(enumerate_connected(z, 5, 3, [](const FiniteSubset&) {}),
                  std::invalid_argument);
}

TEST_CASE("random connected subsets") {
  Group f2 = build_group(GroupSpec::free_group(2));
  CHECK(random_connected_subset(f2, 1, 99).members() ==
        std::vector<Element>{f2.identity()});

  FiniteSubset d = random_connected_subset(f2, 12, 7);
  CHECK(d.size() == 12);
  CHECK(connected_components(d) == 1);
  CHECK(outer_boundary(d).size() == 2 * 12 + 2);  // tree identity

  Group z2 = build_group(GroupSpec::free_abelian(2));
  for (std::uint64_t seed : {0ull, 1ull}) {
    FiniteSubset s = random_connected_subset(z2, 5, seed);
    CHECK(s.size() == 5);
    CHECK(connected_components(s) == 1);
  }
  CHECK(random_connected_subset(z2, 9, 42).members() ==
        random_connected_subset(z2, 9, 42).members());
}

TEST_CASE("free-group leaf removal drops the outer boundary by 2q-2") {
  Group f2 = build_group(GroupSpec::free_group(2));
  for (int seed = 0; seed < 40; ++seed) {
    FiniteSubset d = random_connected_subset(f2, 2 + seed % 9, seed);
    std::size_t far = 0;
    for (std::size_t i = 1; i < d.members().size(); ++i)
      if (d.members()[i].code().size() > d.members()[far].code().size()) far = i;
    std::vector<Element> rest;
    for (std::size_t i = 0; i < d.members().size(); ++i)
      if (i != far) rest.push_back(d.members()[i]);
    FiniteSubset minus(f2, rest);
    CHECK(connected_components(minus) == 1);
    CHECK(outer_boundary(d).size() == outer_boundary(minus).size() + 2);
  }
}

TEST_CASE("ball graph stats agree with the element-wise path") {
  Group h = build_group(GroupSpec::heisenberg());
  BallGraph ball(h, 3);
  ball.enumerate_connected(4, [&](std::span<const int> idx) {
    BallGraph::Stats st = ball.stats(idx);
    BoundaryData b = boundary_data(ball.to_subset(idx));
    CHECK(st.inner == static_cast<std::int64_t>(b.inner.size()));
    CHECK(st.outer == static_cast<std::int64_t>(b.outer.size()));
    CHECK(st.edges == b.edge_count);
    CHECK(st.components == b.components);
  });
}

TEST_CASE("subset dump json") {
  Group z = build_group(GroupSpec::free_abelian(1));
  auto j = nlohmann::json::parse(subset_dump_json(interval(z, 0, 2)));
  CHECK(j["size"] == 3);
  CHECK(j["inner_boundary"] == 2);
  CHECK(j["outer_boundary"] == 2);
  CHECK(j["edge_boundary"] == 2);
  CHECK(j["components"] == 1);
  CHECK(j["members"].size() == 3);
}
