#include <gtest/gtest.h>

#include <set>

#include "wdrd/census.hpp"
#include "wdrd/errors.hpp"

using namespace wdrd;

namespace {

std::vector<std::string> names(const std::vector<AbelianGroup>& groups) {
  std::vector<std::string> out;
  for (const auto& g : groups) out.push_back(g.to_string());
  return out;
}

CensusReport census(std::int64_t max_order, int min_valency = 4, bool prune = false) {
  CensusOptions o;
  o.max_order = max_order;
  o.min_valency = min_valency;
  o.prune_automorphisms = prune;
  return run_census(o);
}

std::set<std::string> matched_specs(const CensusReport& r) {
  std::set<std::string> out;
  for (const auto& c : r.classes)
    for (const auto& m : c.matches) out.insert(m.to_string());
  return out;
}

}  // namespace

TEST(Census, AbelianGroups) {
  EXPECT_EQ(names(enumerate_abelian_groups(8)),
            (std::vector<std::string>{"Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8",
                                      "Z4xZ2", "Z2xZ2xZ2"}));
  EXPECT_EQ(names(enumerate_abelian_groups(1)), std::vector<std::string>{"Z1"});
  std::size_t twelve = 0, sixteen = 0;
  for (const auto& g : enumerate_abelian_groups(24)) {
    twelve += g.order() == 12;
    sixteen += g.order() == 16;
  }
  EXPECT_EQ(twelve, 2u);
  EXPECT_EQ(sixteen, 5u);
}

TEST(Census, AutomorphismCounts) {
  EXPECT_EQ(group_automorphisms(AbelianGroup({8})).size(), 4u);
  EXPECT_EQ(group_automorphisms(AbelianGroup({2, 2})).size(), 6u);
  EXPECT_EQ(group_automorphisms(AbelianGroup({4, 2})).size(), 8u);
  EXPECT_EQ(group_automorphisms(AbelianGroup({2, 2, 2})).size(), 168u);
  EXPECT_EQ(group_automorphisms(AbelianGroup({12})).size(), 4u);
  for (const auto& perm : group_automorphisms(AbelianGroup({6, 2}))) {
    std::set<std::uint32_t> image(perm.begin(), perm.end());
    EXPECT_EQ(image.size(), 12u);
    EXPECT_EQ(perm[0], 0u);
  }
}

TEST(Census, OrderEight) {
  const CensusReport r = census(8);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.unmatched.empty());
  EXPECT_TRUE(r.uncovered.empty());
  EXPECT_FALSE(r.survivors.empty());
  const auto specs = matched_specs(r);
  EXPECT_TRUE(specs.count("i"));
  EXPECT_TRUE(specs.count("ii(p=2,i=1)"));
  for (const auto& s : r.survivors) {
    ASSERT_TRUE(s.match);
    ASSERT_TRUE(s.certificate);
    EXPECT_TRUE(s.certificate->verified);
    EXPECT_GE(s.connection_set.size(), 4u);
  }
}

TEST(Census, MinValencyFilters) {
  const CensusReport r = census(8, 8);
  EXPECT_TRUE(r.survivors.empty());
  EXPECT_TRUE(r.classes.empty());
}

TEST(Census, OrderSixteenAllMatched) {
  const CensusReport r = census(16);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.unmatched.empty());
  EXPECT_TRUE(r.uncovered.empty());
  EXPECT_EQ(r.dedup_classes, r.classes.size());
  EXPECT_EQ(r.family_instances, enumerate_instances(16).size());
}

TEST(Census, PruningKeepsClasses) {
  const CensusReport full = census(12);
  const CensusReport pruned = census(12, 4, true);
  ASSERT_EQ(full.classes.size(), pruned.classes.size());
  for (std::size_t k = 0; k < full.classes.size(); ++k) {
    EXPECT_EQ(full.classes[k].form, pruned.classes[k].form);
  }
  EXPECT_LE(pruned.survivors.size(), full.survivors.size());
  EXPECT_LT(pruned.searched, full.searched);
}

TEST(Census, Contract) {
  EXPECT_THROW(census(7), ContractError);
}
