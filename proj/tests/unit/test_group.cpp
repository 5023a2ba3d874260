#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wdrd/errors.hpp"
#include "wdrd/group.hpp"

using namespace wdrd;

TEST(Group, AddReducesModuloEachFactor) {
  const AbelianGroup z8({8});
  EXPECT_EQ(z8.add(z8.element({3}), z8.element({6})), z8.element({1}));
  const AbelianGroup g({6, 3});
  EXPECT_EQ(g.add(g.element({5, 2}), g.element({1, 1})), g.identity());
  EXPECT_EQ(g.add(g.element({4, 1}), g.identity()), g.element({4, 1}));
}

TEST(Group, NegateGivesCanonicalResidues) {
  const AbelianGroup z8({8});
  EXPECT_EQ(z8.negate(z8.element({1})).coords, std::vector<std::int64_t>{7});
  const AbelianGroup g({6, 3});
  EXPECT_EQ(g.negate(g.element({0, 1})), g.element({0, 2}));
  EXPECT_EQ(g.negate(g.identity()), g.identity());
}

TEST(Group, MismatchedCoordinatesAreStructuralErrors) {
  const AbelianGroup z8({8});
  const AbelianGroup g({6, 3});
  EXPECT_THROW(z8.add(z8.element({1}), g.element({1, 1})), StructuralError);
  EXPECT_THROW(AbelianGroup({}), StructuralError);
  EXPECT_THROW(AbelianGroup({0}), StructuralError);
}

TEST(Group, GeneratesGroup) {
  const AbelianGroup z8({8});
  const std::vector<GroupElement> s{z8.element({1}), z8.element({2}),
                                    z8.element({3}), z8.element({6})};
  EXPECT_TRUE(generates_group(s, z8));
  const std::vector<GroupElement> evens{z8.element({2})};
  EXPECT_FALSE(generates_group(evens, z8));
  const AbelianGroup z44({4, 4});
  const std::vector<GroupElement> axis{z44.element({1, 0})};
  EXPECT_FALSE(generates_group(axis, z44));
}

// Orbit of the identity under repeated addition, independent of the library.
bool brute_generates(const AbelianGroup& g, const std::vector<GroupElement>& s) {
  std::set<GroupElement> seen{g.identity()};
  std::vector<GroupElement> frontier{g.identity()};
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (const auto& e : s) {
      std::vector<std::int64_t> c(x.coords.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = (x.coords[i] + e.coords[i]) % g.moduli()[i];
      }
      GroupElement y{c};
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen.size() == static_cast<std::size_t>(g.order());
}

TEST(Group, RandomPropertiesHold) {
  std::mt19937 rng(7);
  for (const auto& moduli : std::vector<std::vector<std::int64_t>>{
           {8}, {6, 3}, {4, 4}, {12, 2}, {2, 2, 2}, {5, 7}}) {
    const AbelianGroup g(moduli);
    const auto all = g.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& a = all[pick(rng)];
      const auto& b = all[pick(rng)];
      const auto& c = all[pick(rng)];
      EXPECT_EQ(g.add(a, b), g.add(b, a));
      EXPECT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
      EXPECT_EQ(g.negate(g.negate(a)), a);
      EXPECT_EQ(g.add(a, g.negate(a)), g.identity());
    }
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<GroupElement> s;
      const std::size_t k = 1 + trial % 3;
      for (std::size_t i = 0; i < k; ++i) s.push_back(all[pick(rng)]);
      EXPECT_EQ(generates_group(s, g), brute_generates(g, s));
    }
  }
}

TEST(Group, RanksAreLexicographic) {
  const AbelianGroup g({6, 3});
  EXPECT_EQ(g.rank_of(g.element({0, 2})), 2u);
  EXPECT_EQ(g.rank_of(g.element({1, 0})), 3u);
  for (std::size_t r = 0; r < 18; ++r) EXPECT_EQ(g.rank_of(g.element_at(r)), r);
}

TEST(Group, TextFormats) {
  EXPECT_EQ(parse_group("Z6xZ3"), AbelianGroup({6, 3}));
  EXPECT_EQ(parse_group("z12XZ2"), AbelianGroup({12, 2}));
  EXPECT_EQ(parse_group("Z8").to_string(), "Z8");
  const AbelianGroup g({6, 3});
  EXPECT_EQ(format_element(g.element({5, 2})), "(5,2)");
  EXPECT_EQ(format_element(AbelianGroup({8}).element({3})), "3");
  const auto set = parse_element_set("{(0,1),(1,0),(0,-1)}", g);
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set[2], g.element({0, 2}));
  EXPECT_EQ(parse_element_set("1,2,3,6", AbelianGroup({8})).size(), 4u);
}

TEST(Group, ParseErrorsCarryPosition) {
  try {
    parse_group("Z8yZ2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_element("(1,2,3)", AbelianGroup({6, 3})), ParseError);
  EXPECT_THROW(parse_element_set("1,,2", AbelianGroup({8})), ParseError);
}
