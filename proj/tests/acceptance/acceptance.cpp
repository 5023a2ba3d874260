// Runs acceptance criteria 1-9 over one shared corpus and prints a
// PASS/FAIL line for each. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "wdrd/arcs.hpp"
#include "wdrd/census.hpp"
#include "wdrd/errors.hpp"
#include "wdrd/families.hpp"
#include "wdrd/iso.hpp"
#include "wdrd/scheme.hpp"

using namespace wdrd;

namespace {

constexpr std::int64_t kFamilyOrder = 200;
constexpr std::int64_t kCensusOrder = 24;
constexpr std::size_t kOracleOrder = 32;
constexpr std::size_t kPermutationOrder = 9;

struct Instance {
  std::string name;
  Digraph digraph;
  std::optional<FamilySpec> spec;
};

// Per-criterion tally. The first few failures are kept for the report.
struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;
  std::map<std::string, std::uint64_t> counters;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failures;
    if (messages.size() < 8) messages.push_back(what);
  }
  void merge(const Tally& other) {
    checked += other.checked;
    failures += other.failures;
    for (const auto& m : other.messages)
      if (messages.size() < 8) messages.push_back(m);
    for (const auto& [k, v] : other.counters) counters[k] += v;
  }
};

using Tallies = std::array<Tally, 10>;

std::string pair_text(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Digraph cayley(const std::string& group, const std::string& set) {
  const AbelianGroup g = parse_group(group);
  return from_cayley(g, parse_element_set(set, g));
}

bool iso_verified(const Digraph& a, const Digraph& b) {
  const auto cert = are_isomorphic(a, b);
  return cert && cert->verified && verify_isomorphism(a, b, cert->mapping);
}

std::int64_t arc_valency(const IntersectionTensor& p, int r) {
  const auto idx = p.find({1, r});
  return idx ? p.valency(*idx) : 0;
}

// Criterion 1 on family instances; criteria 3, 4, 6 and 8 on everything;
// criterion 5 on family instances.
void examine(const Instance& inst, Tallies& t) {
  const Digraph& d = inst.digraph;
  const bool family = inst.spec.has_value();

  const bool connected = is_strongly_connected(d);
  if (family) t[1].check(connected, inst.name + ": not strongly connected");
  if (!connected) return;
  const DistanceTable table = distance_table(d);
  const RelationPartition rel = compute_relations(d, table);
  const WdrdVerdict verdict = check_wdrd(rel);

  if (d.vertex_count() <= kOracleOrder) {
    const auto def = oracle::definitional_wdrd(d);
    t[8].check(def.has_value() == verdict.is_wdrd, inst.name + ": WDRD verdict differs from oracle");
    if (def && verdict.is_wdrd) {
      const IntersectionTensor p = intersection_tensor(rel);
      using oracle::Pair;
      std::map<Pair, std::map<std::pair<Pair, Pair>, int>> mine;
      const auto r = static_cast<RelationIndex>(p.relation_count());
      for (RelationIndex h = 0; h < r; ++h) {
        auto& row = mine[{p.type(h).forward, p.type(h).backward}];
        for (RelationIndex i = 0; i < r; ++i)
          for (RelationIndex j = 0; j < r; ++j)
            if (const auto v = p(h, i, j); v != 0)
              row[{{p.type(i).forward, p.type(i).backward}, {p.type(j).forward, p.type(j).backward}}] =
                  static_cast<int>(v);
      }
      t[8].check(mine == *def, inst.name + ": intersection numbers differ from oracle");
    }
    ++t[8].counters["wdrd_oracle"];
  }

  if (family) t[1].check(verdict.is_wdrd, inst.name + ": not WDRD");
  if (!verdict.is_wdrd) return;
  const IntersectionTensor p = intersection_tensor(rel);
  const bool commutative = is_commutative(p);
  const std::int64_t max_p = max_intersection_number(p);
  if (family) {
    t[1].check(commutative, inst.name + ": not commutative");
    t[1].check(max_p == 2, inst.name + ": max intersection number " + std::to_string(max_p));
    t[1].check(p.valency() > 3, inst.name + ": valency " + std::to_string(p.valency()));
  }

  const Lemma1Report lemma = check_lemma1(p);
  for (std::size_t k = 0; k < lemma.identities.size(); ++k) {
    const auto& c = lemma.identities[k];
    t[3].check(c.passed, inst.name + ": identity " + std::to_string(k + 1) + " " + c.detail);
  }

  if (!commutative || max_p > 2) return;
  const ArcTypeProfile profile = arc_type_profile(d, table);
  const auto ks = profile.back_distances();

  // Criterion 4.
  for (const auto& entry : profile.types) {
    const int q = entry.back_distance + 1;
    if (q < 3) continue;
    const bool mixed = is_mixed_via_tensor(p, q);
    t[4].check(mixed != entry.pure, inst.name + ": purity of " + pair_text(1, q - 1) +
                                        " definitional " + (entry.pure ? "pure" : "mixed") +
                                        ", tensor " + (mixed ? "mixed" : "pure"));
    ++t[4].counters["types"];
    if (mixed) ++t[4].counters["mixed"];
    const RelationIndex a = p.index_of({1, q - 1});
    // (iii): p^{(1,s-1)}_{(1,q-1),(1,q-1)} ≠ 0 forces s = q-1.
    for (const auto& [h, v] : p.support(a, a)) {
      const auto ty = p.type(h);
      if (ty.forward != 1) continue;
      t[4].check(ty.backward + 1 == q - 1, inst.name + ": (iii) fails at q=" + std::to_string(q));
      ++t[4].counters["(iii)"];
    }
    // (ii)(b) ⇔ mixed.
    bool b = false;
    if (const auto below = p.find({1, q - 2}); below) {
      const bool nonzero = p(*below, a, a) != 0;
      const bool below_pure = q - 1 < 2 || profile.entry(q - 2).pure;
      b = nonzero && below_pure;
    }
    t[4].check(b == mixed, inst.name + ": (ii)(b) disagrees at q=" + std::to_string(q));
    // (i): p^{(1,q-1)}_{(1,s-1),(1,t-1)} ≠ 0 with s < t forces s = 2, t = q.
    for (auto rs : ks) {
      for (auto rt : ks) {
        if (rs >= rt) continue;
        if (p(a, p.index_of({1, rs}), p.index_of({1, rt})) == 0) continue;
        t[4].check(rs + 1 == 2 && rt + 1 == q,
                   inst.name + ": (i) fails for q=" + std::to_string(q) + " s=" +
                       std::to_string(rs + 1) + " t=" + std::to_string(rt + 1));
        ++t[4].counters["(i)"];
      }
    }
  }

  // Criterion 6.
  std::set<int> config_hs;
  for (auto rq : ks) {
    for (auto rh : ks) {
      const int q = rq + 1, h = rh + 1;
      if (q <= 2 || h <= 2 || q == h) continue;
      if (!config_exists(p, q, h)) continue;
      ++t[6].counters["configurations"];
      config_hs.insert(h);
      t[6].check(arc_valency(p, h - 1) == 1, inst.name + ": C" + pair_text(q, h) + " k_{1,h-1}≠1");
      t[6].check(arc_valency(p, q - 1) == 2, inst.name + ": C" + pair_text(q, h) + " k_{1,q-1}≠2");
      t[6].check(profile.entry(q - 1).pure, inst.name + ": C" + pair_text(q, h) + " (1,q-1) mixed");
    }
  }
  t[6].check(config_hs.size() <= 1, inst.name + ": configurations with different h");

  if (!family || p.valency() <= 3) return;

  // Criterion 5.
  auto pure = [&](int r) { return profile.contains(r) && profile.entry(r).pure; };
  auto mixed_type = [&](int r) { return profile.contains(r) && !profile.entry(r).pure; };
  for (auto r : ks) {
    const int q = r + 1;
    if (q < 3) continue;
    if (arc_valency(p, q - 1) == 2 && pure(q - 1)) {
      const std::vector<int> qs{q};
      const Subdigraph sub = delta_component(d, table, 0, qs);
      const AbelianGroup g({2 * q});
      const Digraph target = from_cayley(g, std::vector<GroupElement>{g.element({1}), g.element({q + 1})});
      t[5].check(iso_verified(sub.digraph, target),
                 inst.name + ": Δ_" + std::to_string(q) + " not Cay(Z_2q,{1,q+1})");
      ++t[5].counters["pure Δ_q"];
      if (mixed_type(q)) {
        const std::vector<int> qs2{q, q + 1};
        const Subdigraph sub2 = delta_component(d, table, 0, qs2);
        const AbelianGroup g2({4 * q});
        const Digraph target2 =
            from_cayley(g2, std::vector<GroupElement>{g2.element({1}), g2.element({2}), g2.element({2 * q + 1}),
                             g2.element({2 * q + 2})});
        t[5].check(iso_verified(sub2.digraph, target2),
                   inst.name + ": Δ_{q,q+1} not Cay(Z_4q,...) at q=" + std::to_string(q));
        ++t[5].counters["Δ_{q,q+1}"];
      }
    }
    for (auto rh : ks) {
      const int h = rh + 1;
      if (h <= 2 || h == q || !config_exists(p, q, h)) continue;
      const std::vector<int> qs{q, h};
      const Subdigraph sub = delta_component(d, table, 0, qs);
      const AbelianGroup g({q, 4});
      const Digraph target =
          from_cayley(g, std::vector<GroupElement>{g.element({1, 0}), g.element({0, 1}), g.element({1, 2})});
      t[5].check(iso_verified(sub.digraph, target),
                 inst.name + ": Δ_{q,h} not Cay(Z_q×Z_4,...) at " + pair_text(q, h));
      ++t[5].counters["Δ_{q,h}"];
    }
  }
  const CaseVerdict cv = classify_case(d, table, p);
  if (cv.case_id == "C6" && arc_valency(p, 1) == 2 && arc_valency(p, cv.q - 1) == 1) {
    const int q = cv.q;
    const std::vector<int> qs{2, q};
    const Subdigraph sub = delta_component(d, table, 0, qs);
    const auto size = static_cast<std::int64_t>(sub.digraph.vertex_count());
    const std::int64_t bound = q - (q % 2 == 0 ? 1 : 0);
    bool ok = size % q == 0 && size / q <= bound && size / q >= 1;
    if (ok) {
      const std::int64_t n = size / q;
      const AbelianGroup g({q, n});
      std::vector<GroupElement> set{g.element({1, 0}), g.element({0, 1}), g.element({0, -1})};
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      ok = n >= 3 && iso_verified(sub.digraph, from_cayley(g, set));
    }
    t[5].check(ok, inst.name + ": Δ_{2,q} not Cay(Z_q×Z_n,...) |Δ|=" + std::to_string(size));
    ++t[5].counters["Δ_{2,q}"];
  }
}

void criterion2(const std::vector<FamilySpec>& specs, Tally& t) {
  for (const auto& s : specs) {
    if (s.family == Family::I || s.family == Family::II || s.family == Family::III) continue;
    const auto inst = construct(s);
    const DistanceTable table = distance_table(inst.digraph);
    for (const auto& g : inst.group.elements()) {
      if (g.is_identity()) continue;
      const TwoWayDistance bfs = two_way(table, 0, static_cast<Vertex>(inst.group.rank_of(g)));
      const TwoWayDistance formula = table1_distance(s, g);
      t.check(formula == bfs, s.to_string() + " at " + format_element(g) + ": formula " +
                                  formula.to_string() + " bfs " + bfs.to_string());
    }
    ++t.counters["specs"];
  }
}

void criterion8_iso(const std::vector<Instance>& corpus, Tally& t) {
  std::vector<Digraph> small;
  for (const auto& inst : corpus)
    if (inst.digraph.vertex_count() <= kPermutationOrder) small.push_back(inst.digraph);
  // Relabelled copies and random digraphs keep both outcomes represented.
  std::mt19937 rng(2024);
  const std::size_t base = small.size();
  for (std::size_t k = 0; k < base; ++k) {
    std::vector<Vertex> perm(small[k].vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Arc> arcs;
    for (const auto& [u, v] : small[k].arcs()) arcs.emplace_back(perm[u], perm[v]);
    small.push_back(Digraph::from_arcs(small[k].vertex_count(), arcs));
  }
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 5 + k % 5;
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && coin(rng)) arcs.emplace_back(u, v);
    small.push_back(Digraph::from_arcs(n, arcs));
  }
  for (std::size_t a = 0; a < small.size(); ++a) {
    for (std::size_t b = a; b < small.size(); ++b) {
      if (small[a].vertex_count() != small[b].vertex_count()) continue;
      const bool expected = oracle::permutation_isomorphism(small[a], small[b]).has_value();
      const auto cert = are_isomorphic(small[a], small[b]);
      const bool ok = cert.has_value() == expected &&
                      (!cert || verify_isomorphism(small[a], small[b], cert->mapping));
      t.check(ok, "iso pair " + std::to_string(a) + "," + std::to_string(b));
      ++t.counters[expected ? "iso_pairs" : "non_iso_pairs"];
    }
  }
}

void criterion9(Tally& t) {
  auto quotient_of = [](const Digraph& d) {
    const DistanceTable table = distance_table(d);
    const RelationPartition r = compute_relations(d, table);
    const IntersectionTensor p = intersection_tensor(r);
    const std::vector<RelationIndex> gens{p.index_of({1, 1})};
    return quotient(d, r, p, closed_subset(p, gens));
  };
  for (const char* set : {"1,2,3,6", "1,2,5,6"}) {
    const Quotient q = quotient_of(cayley("Z8", set));
    const bool ok = q.blocks.size() == 2 && q.digraph.arcs() == std::vector<Arc>{{0, 1}, {1, 0}};
    t.check(ok, std::string("Z8 {") + set + "}: quotient is not a 2-cycle");
  }
  const Quotient q = quotient_of(cayley("Z4xZ4", "(0,1),(1,0),(2,0),(0,2)"));
  bool ok = q.blocks.size() == 4 && q.digraph.arc_count() == 8 && is_strongly_connected(q.digraph);
  for (const auto& [u, v] : q.digraph.arcs()) ok = ok && q.digraph.has_arc(v, u);
  for (Vertex v = 0; v < q.digraph.vertex_count() && ok; ++v) ok = q.digraph.out(v).size() == 2;
  t.check(ok, "Z4xZ4: quotient is not an undirected 4-cycle");
}

std::string summary(const Tally& t) {
  std::ostringstream out;
  out << t.checked << " checks";
  for (const auto& [k, v] : t.counters) out << ", " << k << "=" << v;
  return out.str();
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Tallies tallies;
  std::array<std::string, 10> extra;

  const std::vector<FamilySpec> specs = enumerate_instances(kFamilyOrder);
  std::vector<Instance> corpus;
  std::set<Family> families_seen;
  for (const auto& s : specs) {
    corpus.push_back({s.to_string(), construct(s).digraph, s});
    families_seen.insert(s.family);
  }
  tallies[1].check(families_seen.size() == 10, "not every family has an instance");

  // Criterion 7 also supplies census survivors to the corpus.
  CensusOptions options;
  options.max_order = kCensusOrder;
  const auto census_start = Clock::now();
  const CensusReport report = run_census(options);
  const double census_seconds = std::chrono::duration<double>(Clock::now() - census_start).count();
  {
    Tally& t = tallies[7];
    t.check(report.complete, "census did not complete");
    t.check(report.unmatched.empty(), std::to_string(report.unmatched.size()) + " unmatched survivors");
    t.check(report.uncovered.empty(), std::to_string(report.uncovered.size()) + " family instances not found");
    t.check(report.family_instances == enumerate_instances(kCensusOrder).size(), "family instance count");
    for (const auto& s : report.survivors)
      t.check(s.certificate && s.certificate->verified, "unverified survivor certificate");
    std::ostringstream e;
    e << "searched=" << report.searched << " survivors=" << report.survivors.size()
      << " classes=" << report.classes.size() << " family_instances=" << report.family_instances
      << " seconds=" << static_cast<int>(census_seconds) << " (" << kCensusScope << ")";
    extra[7] = e.str();
  }
  for (const auto& s : report.survivors) {
    corpus.push_back({"census " + s.group.to_string() + ":" + format_element_set(s.connection_set),
                      from_cayley(s.group, s.connection_set), std::nullopt});
  }
  // Negative control for the oracle comparison: the excluded iv(q=4,i=1) set.
  corpus.push_back({"Z4xZ4:(0,1),(1,0),(1,2),(0,3)",
                    cayley("Z4xZ4", "(0,1),(1,0),(1,2),(0,3)"), std::nullopt});

  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        Tallies local;
        for (std::size_t k; (k = next.fetch_add(1)) < corpus.size();) {
          try {
            examine(corpus[k], local);
          } catch (const std::exception& e) {
            local[0].check(false, corpus[k].name + ": " + e.what());
          }
        }
        std::lock_guard lock(mutex);
        for (std::size_t c = 0; c < local.size(); ++c) tallies[c].merge(local[c]);
      });
    }
  }
  // Exceptions during examination count against every per-instance criterion.
  for (int c : {1, 3, 4, 5, 6, 8}) {
    tallies[c].failures += tallies[0].failures;
    for (const auto& m : tallies[0].messages) tallies[c].messages.push_back("exception " + m);
  }

  criterion2(specs, tallies[2]);
  criterion8_iso(corpus, tallies[8]);
  criterion9(tallies[9]);

  // Each shape check has to fire somewhere in the corpus.
  for (const char* key : {"pure Δ_q", "Δ_{q,q+1}", "Δ_{q,h}", "Δ_{2,q}"})
    tallies[5].check(tallies[5].counters[key] > 0, std::string("no instance satisfies ") + key);
  tallies[6].check(tallies[6].counters["configurations"] > 0, "no configuration found");
  tallies[4].check(tallies[4].counters["mixed"] > 0, "no mixed type found");
  tallies[8].check(tallies[8].counters["non_iso_pairs"] > 0, "no non-isomorphic pair tested");

  extra[1] = std::to_string(specs.size()) + " family instances";
  extra[3] = std::to_string(corpus.size()) + " corpus instances";

  static const char* kTitles[] = {"",
                                  "family soundness",
                                  "closed-form distances",
                                  "intersection number identities",
                                  "purity criterion",
                                  "subdigraph shapes",
                                  "configuration consequences",
                                  "census completeness",
                                  "oracle equivalence",
                                  "quotient shapes"};
  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    const Tally& t = tallies[c];
    const bool pass = t.failures == 0 && t.checked > 0;
    all = all && pass;
    std::cout << "criterion " << c << ": " << (pass ? "PASS" : "FAIL") << " " << kTitles[c]
              << " (" << summary(t) << (extra[c].empty() ? "" : "; " + extra[c]) << ")\n";
    for (const auto& m : t.messages) std::cout << "    " << m << '\n';
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::cout << "total " << static_cast<int>(seconds) << "s\n";
  return all ? 0 : 1;
}
