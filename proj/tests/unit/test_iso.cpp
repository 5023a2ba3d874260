#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wdrd/families.hpp"
#include "wdrd/iso.hpp"

using namespace wdrd;

namespace {

Digraph cayley(const std::string& group, const std::string& set) {
  const AbelianGroup g = parse_group(group);
  return from_cayley(g, parse_element_set(set, g));
}

Digraph relabel(const Digraph& d, const std::vector<Vertex>& perm) {
  std::vector<Arc> arcs;
  for (const auto& [u, v] : d.arcs()) arcs.emplace_back(perm[u], perm[v]);
  return Digraph::from_arcs(d.vertex_count(), arcs);
}

Digraph random_digraph(std::size_t n, double density, std::mt19937& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
  return Digraph::from_arcs(n, arcs);
}

}  // namespace

TEST(Iso, DirectedCycles) {
  const Digraph c5a = cayley("Z5", "1");
  const Digraph c5b = cayley("Z5", "2");
  const auto cert = are_isomorphic(c5a, c5b);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->verified);
  EXPECT_TRUE(verify_isomorphism(c5a, c5b, cert->mapping));
  EXPECT_FALSE(are_isomorphic(c5a, cayley("Z5", "1,4")));
  EXPECT_FALSE(are_isomorphic(c5a, cayley("Z6", "1")));
}

TEST(Iso, Z8Example) {
  const Digraph a = cayley("Z8", "1,2,3,6");
  // 5·{1,2,3,6} = {2,5,6,7}
  const Digraph b = cayley("Z8", "2,5,6,7");
  const auto cert = are_isomorphic(a, b);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verify_isomorphism(a, b, cert->mapping));
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  // Not isomorphic: {1,2,5,6} is family (ii) with p=2, i=1.
  EXPECT_FALSE(are_isomorphic(a, cayley("Z8", "1,2,5,6")));
  EXPECT_FALSE(are_isomorphic(a, cayley("Z8", "2,3,6,7")));
}

TEST(Iso, VerifyRejectsBadMaps) {
  const Digraph a = cayley("Z6", "1");
  std::vector<Vertex> id(6);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_TRUE(verify_isomorphism(a, a, id));
  std::swap(id[0], id[1]);
  EXPECT_FALSE(verify_isomorphism(a, a, id));
  EXPECT_FALSE(verify_isomorphism(a, a, {0, 0, 1, 2, 3, 4}));
  EXPECT_FALSE(verify_isomorphism(a, a, {0, 1, 2}));
}

TEST(Iso, AgreesWithPermutationOracle) {
  std::mt19937 rng(7);
  int isomorphic = 0, non_isomorphic = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const Digraph a = random_digraph(n, 0.4, rng);
    Digraph b;
    if (trial % 2 == 0) {
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      b = relabel(a, perm);
    } else {
      b = random_digraph(n, 0.4, rng);
    }
    const bool expected = oracle::permutation_isomorphism(a, b).has_value();
    const auto cert = are_isomorphic(a, b);
    ASSERT_EQ(cert.has_value(), expected) << "trial " << trial;
    EXPECT_EQ(canonical_form(a) == canonical_form(b), expected);
    if (cert) {
      EXPECT_TRUE(verify_isomorphism(a, b, cert->mapping));
      ++isomorphic;
    } else {
      ++non_isomorphic;
    }
  }
  EXPECT_GT(isomorphic, 100);
  EXPECT_GT(non_isomorphic, 50);
}

TEST(Iso, CanonicalFormInvariantUnderRelabelling) {
  std::mt19937 rng(11);
  for (const auto& spec : enumerate_instances(40)) {
    const Digraph d = construct(spec).digraph;
    std::vector<Vertex> perm(d.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Digraph e = relabel(d, perm);
    const CanonicalForm f = canonical_form(d);
    EXPECT_EQ(f, canonical_form(e)) << spec.to_string();
    const Digraph image = relabel(d, f.labelling);
    EXPECT_EQ(image.arcs(), f.arcs);
    const auto cert = are_isomorphic(d, e);
    ASSERT_TRUE(cert) << spec.to_string();
    EXPECT_TRUE(cert->verified);
  }
}

TEST(Iso, DistinctFamilyInstancesSeparated) {
  const auto specs = enumerate_instances(48);
  std::vector<CanonicalForm> forms;
  for (const auto& s : specs) forms.push_back(canonical_form(construct(s).digraph));
  for (std::size_t a = 0; a < specs.size(); ++a) {
    for (std::size_t b = a + 1; b < specs.size(); ++b) {
      if (forms[a].vertex_count != forms[b].vertex_count) continue;
      const bool same = forms[a] == forms[b];
      EXPECT_EQ(same, are_isomorphic(construct(specs[a]).digraph,
                                     construct(specs[b]).digraph).has_value())
          << specs[a].to_string() << " vs " << specs[b].to_string();
    }
  }
}

TEST(Iso, EmptyAndSingleVertex) {
  const Digraph empty = Digraph::from_arcs(0, {});
  EXPECT_TRUE(are_isomorphic(empty, empty));
  const Digraph one = Digraph::from_arcs(1, {});
  EXPECT_TRUE(are_isomorphic(one, one));
  EXPECT_FALSE(are_isomorphic(one, empty));
}
