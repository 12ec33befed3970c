#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "isoperf/cayley.hpp"
#include "oracles.hpp"

using namespace isoperf;

TEST_CASE("dihedral growth matches the cube") {
  GrowthTable t = growth_table(build_group(GroupSpec::dihedral(4)), 3);
  CHECK(t.gamma_all() == std::vector<std::int64_t>{1, 4, 7, 8});
  CHECK(sphere_sizes(t) == std::vector<std::int64_t>{1, 3, 3, 1});
  CHECK(t.saturated());
  CHECK(*t.group_order() == 8);
  CHECK(*t.saturation_radius() == 3);
  CHECK(t.to_csv() == "n,gamma,sigma\n0,1,1\n1,4,3\n2,7,3\n3,8,1\n");
}

TEST_CASE("integer line growth is 2n+1") {
  GrowthTable t = growth_table(build_group(GroupSpec::free_abelian(1)), 5);
  for (int n = 0; n <= 5; ++n) CHECK(t.gamma(n) == 2 * n + 1);
  for (int n = 1; n <= 5; ++n) CHECK(t.sigma(n) == 2);
  CHECK(!t.saturated());
}

TEST_CASE("free group growth matches the closed form") {
  for (int q = 2; q <= 3; ++q) {
    GrowthTable t = growth_table(build_group(GroupSpec::free_group(q)), 6);
    for (int n = 0; n <= 6; ++n)
      CHECK(t.gamma(n) == oracles::free_growth_closed_form(q, n));
    // sphere sizes: 2q (2q-1)^{k-1}
    std::int64_t expect = 2 * q;
    for (int k = 1; k <= 6; ++k) {
      CHECK(t.sigma(k) == expect);
      expect *= 2 * q - 1;
    }
  }
}

TEST_CASE("heisenberg ball sizes") {
  GrowthTable t = growth_table(build_group(GroupSpec::heisenberg()), 2);
  CHECK(t.gamma_all() == std::vector<std::int64_t>{1, 5, 17});
}

TEST_CASE("BFS census equals brute-force word expansion") {
  std::vector<Group> zoo = {
      build_group(GroupSpec::dihedral(4)),
      build_group(GroupSpec::free_group(2)),
      build_group(GroupSpec::heisenberg()),
      build_group(GroupSpec::lamplighter()),
      build_group(GroupSpec::free_abelian(2)),
  };
  for (const Group& g : zoo) {
    GrowthTable t = growth_table(g, 4);
    auto oracle = oracles::word_expansion_census(g, 4);
    for (int n = 0; n <= 4; ++n) CHECK(t.gamma(n) == oracle[n]);
  }
}

TEST_CASE("ball membership and ordering") {
  GrowthTable t = growth_table(build_group(GroupSpec::free_abelian(2)), 3);
  CHECK(t.elements().size() == 25);
  CHECK(*t.norm_of(Element(Element::Code{1, -2})) == 3);
  CHECK(!t.norm_of(Element(Element::Code{4, 0})).has_value());
  for (std::size_t i = 1; i < t.elements().size(); ++i) {
    bool ordered = t.norms()[i - 1] < t.norms()[i] ||
                   (t.norms()[i - 1] == t.norms()[i] &&
                    t.elements()[i - 1] < t.elements()[i]);
    CHECK(ordered);
  }
}

TEST_CASE("inverse growth three-way results") {
  Group z = build_group(GroupSpec::free_abelian(1));
  GrowthTable zt = growth_table(z, 8);
  CHECK(inverse_growth(zt, 10).n == 5);
  CHECK(inverse_growth(zt, 1).n == 0);
  CHECK(inverse_growth(zt, 9).n == 4);
  CHECK(inverse_growth_strict(zt, 9).n == 5);
  CHECK(inverse_growth_strict(zt, 0.5).n == 0);
  CHECK(inverse_growth(zt, 100).status == InverseGrowth::Status::NeedsLargerRadius);

  GrowthTable d4 = growth_table(build_group(GroupSpec::dihedral(4)), 3);
  CHECK(inverse_growth(d4, 9).is_infinite());
  CHECK(inverse_growth(d4, 8).n == 3);
  CHECK(inverse_growth_strict(d4, 8).is_infinite());
  CHECK(inverse_growth_strict(d4, 7.5).n == 3);

  CHECK_THROWS_AS(inverse_growth(zt, 0.0), std::invalid_argument);
}

TEST_CASE("rational inverse growth agrees with the double path") {
  GrowthTable t = growth_table(build_group(GroupSpec::free_group(2)), 5);
  for (std::int64_t num = 1; num <= 2 * t.gamma(5); ++num) {
    for (std::int64_t den : {1, 2, 3}) {
      InverseGrowth a = inverse_growth_rational(t, num, den);
      InverseGrowth b = inverse_growth(t, static_cast<double>(num) / den);
      CHECK(a.status == b.status);
      if (a.is_value()) CHECK(a.n == b.n);
    }
  }
}

TEST_CASE("phi is a left inverse of gamma") {
  std::vector<Group> zoo = {
      build_group(GroupSpec::dihedral(4)),
      build_group(GroupSpec::free_group(2)),
      build_group(GroupSpec::free_abelian(2)),
      build_group(GroupSpec::lamplighter()),
  };
  for (const Group& g : zoo) {
    GrowthTable t = growth_table(g, 5);
    for (int n = 0; n <= t.radius(); ++n) {
      if (n > 0 && t.sigma(n) == 0) continue;
      InverseGrowth phi = inverse_growth(t, static_cast<double>(t.gamma(n)));
      REQUIRE(phi.is_value());
      CHECK(phi.n == n);
      // the strict variant always dominates
      InverseGrowth strict = inverse_growth_strict(t, static_cast<double>(t.gamma(n)));
      if (strict.is_value()) CHECK(strict.n >= phi.n);
    }
  }
}

TEST_CASE("truncation keeps the census consistent") {
  GrowthTable t = growth_table(build_group(GroupSpec::free_group(2)), 6);
  GrowthTable t3 = t.truncated(3);
  CHECK(t3.radius() == 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(t3.gamma(n) == t.gamma(n));
    CHECK(t3.sigma(n) == t.sigma(n));
    CHECK(t3.prefix(n) == t.prefix(n));
  }
  CHECK(!t3.saturated());

  GrowthTable d4 = growth_table(build_group(GroupSpec::dihedral(4)), 6);
  CHECK(d4.truncated(3).saturated());
  CHECK(!d4.truncated(2).saturated());
}

TEST_CASE("element cap raises a resource error naming the radius") {
  try {
    growth_table(build_group(GroupSpec::free_group(2)), 8, 100);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.reached >= 1);
    CHECK(e.reached < 8);
  }
}

TEST_CASE("infinite groups keep growing strictly") {
  for (const GroupSpec& spec :
       {GroupSpec::free_group(2), GroupSpec::free_abelian(2), GroupSpec::heisenberg(),
        GroupSpec::lamplighter()}) {
    GrowthTable t = growth_table(build_group(spec), 6);
    CHECK(!t.saturated());
    for (int n = 1; n <= 6; ++n) CHECK(t.sigma(n) > 0);
  }
}

TEST_CASE("saturation padding beyond the diameter") {
  GrowthTable t = growth_table(build_group(GroupSpec::dihedral(4)), 6);
  CHECK(t.gamma(6) == 8);
  CHECK(t.sigma(5) == 0);
  CHECK(*t.saturation_radius() == 3);
}
