#include "wdrd/arcs.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "wdrd/errors.hpp"

namespace wdrd {

namespace {

std::string pair_text(std::int32_t a, std::int32_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

class CircuitSearch {
 public:
  CircuitSearch(const Digraph& digraph, const DistanceTable& table,
                std::int32_t back, std::size_t budget)
      : digraph_(digraph),
        table_(table),
        back_(back),
        budget_(budget),
        mixed_below_(digraph.vertex_count(), 0) {}

  // Returns a witness path (v ... u) containing an arc of another type, or
  // nullopt when every path of length q-1 from v back to u is pure.
  std::optional<std::vector<Vertex>> run(Vertex u, Vertex v) {
    if (!target_ || *target_ != u) prepare(u);
    arc_tail_ = u;
    arc_head_ = v;
    paths_for_arc_ = 0;
    path_.assign(1, v);
    if (dfs(v, back_, false)) return path_;
    return std::nullopt;
  }

  std::uint64_t paths_examined() const noexcept { return total_paths_; }

 private:
  // Such paths step along arcs that lower ∂(·,u) by one. mixed_below_[w]
  // records whether some continuation from w uses another arc type; subtrees
  // without one are counted rather than walked, since a pure Δ_q has 2^(q-2)
  // such paths per arc.
  void prepare(Vertex u) {
    target_ = u;
    const std::size_t n = digraph_.vertex_count();
    std::vector<Vertex> order(n);
    for (Vertex w = 0; w < n; ++w) order[w] = w;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return table_(a, u) < table_(b, u);
    });
    pure_paths_.assign(n, 0);
    for (Vertex w : order) {
      const std::int32_t d = table_(w, u);
      if (d == 0) {
        mixed_below_[w] = 0;
        pure_paths_[w] = 1;
        continue;
      }
      bool mixed = false;
      std::uint64_t count = 0;
      for (Vertex next : digraph_.out(w)) {
        if (table_(next, u) != d - 1) continue;
        mixed = mixed || table_(next, w) != back_ || mixed_below_[next];
        count = std::min<std::uint64_t>(count + pure_paths_[next],
                                        std::uint64_t{1} << 62);
      }
      mixed_below_[w] = mixed;
      pure_paths_[w] = count;
    }
  }

  // Only walked paths count against the budget.
  void charge(std::uint64_t paths, bool walked) {
    total_paths_ += paths;
    if (walked) paths_for_arc_ += paths;
    if (paths_for_arc_ > budget_) {
      throw ResourceError("path budget of " + std::to_string(budget_) +
                          " exceeded on arc (" + std::to_string(arc_tail_) +
                          "," + std::to_string(arc_head_) + ")");
    }
  }

  bool dfs(Vertex w, std::int32_t remaining, bool mixed) {
    if (remaining == 0) {
      charge(1, true);
      return mixed;
    }
    if (!mixed && !mixed_below_[w]) {
      charge(pure_paths_[w], false);
      return false;
    }
    for (Vertex next : digraph_.out(w)) {
      if (table_(next, *target_) != remaining - 1) continue;
      const bool other = table_(next, w) != back_;
      path_.push_back(next);
      if (dfs(next, remaining - 1, mixed || other)) return true;
      path_.pop_back();
    }
    return false;
  }

  const Digraph& digraph_;
  const DistanceTable& table_;
  std::int32_t back_;
  std::size_t budget_;
  std::optional<Vertex> target_;
  std::vector<char> mixed_below_;
  std::vector<std::uint64_t> pure_paths_;
  Vertex arc_tail_ = 0;
  Vertex arc_head_ = 0;
  std::uint64_t paths_for_arc_ = 0;
  std::uint64_t total_paths_ = 0;
  std::vector<Vertex> path_;
};

std::vector<std::int32_t> k_set_of(const Digraph& digraph,
                                   const DistanceTable& table) {
  std::vector<std::int32_t> k;
  for (const auto& [u, v] : digraph.arcs()) k.push_back(table(v, u));
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

RelationIndex require_relation(const IntersectionTensor& p, std::int32_t a,
                               std::int32_t b) {
  if (auto i = p.find({a, b})) return *i;
  throw StructuralError("relation " + pair_text(a, b) + " does not occur");
}

}  // namespace

TwoWayDistance arc_type(const Digraph& digraph, const DistanceTable& table,
                        Vertex u, Vertex v) {
  if (u >= digraph.vertex_count() || v >= digraph.vertex_count() ||
      !digraph.has_arc(u, v)) {
    throw StructuralError("(" + std::to_string(u) + "," + std::to_string(v) +
                          ") is not an arc");
  }
  return {1, table(v, u)};
}

PurityResult is_pure_definitional(const Digraph& digraph,
                                  const DistanceTable& table, int q,
                                  std::size_t path_budget) {
  if (q < 2) throw ContractError("purity needs q >= 2");
  const std::int32_t back = q - 1;
  PurityResult result;
  CircuitSearch search(digraph, table, back, path_budget);
  bool any = false;
  for (const auto& [u, v] : digraph.arcs()) {
    if (table(v, u) != back) continue;
    any = true;
    if (auto path = search.run(u, v)) {
      result.pure = false;
      result.witness_circuit.push_back(u);
      result.witness_circuit.insert(result.witness_circuit.end(),
                                    path->begin(), path->end() - 1);
      result.witness_types.push_back({1, back});
      for (std::size_t k = 0; k + 1 < path->size(); ++k) {
        result.witness_types.push_back(
            {1, table((*path)[k + 1], (*path)[k])});
      }
      break;
    }
  }
  if (!any) {
    throw StructuralError("arc type " + pair_text(1, back) +
                          " does not occur");
  }
  result.paths_examined = search.paths_examined();
  return result;
}

std::vector<std::int32_t> ArcTypeProfile::back_distances() const {
  std::vector<std::int32_t> out;
  for (const auto& t : types) out.push_back(t.back_distance);
  return out;
}

bool ArcTypeProfile::contains(std::int32_t r) const {
  return std::any_of(types.begin(), types.end(),
                     [r](const ArcTypeEntry& t) { return t.back_distance == r; });
}

const ArcTypeEntry& ArcTypeProfile::entry(std::int32_t r) const {
  for (const auto& t : types) {
    if (t.back_distance == r) return t;
  }
  throw StructuralError("arc type " + pair_text(1, r) + " does not occur");
}

ArcTypeProfile arc_type_profile(const Digraph& digraph,
                                const DistanceTable& table,
                                std::size_t path_budget) {
  ArcTypeProfile profile;
  for (std::int32_t r : k_set_of(digraph, table)) {
    ArcTypeEntry entry;
    entry.back_distance = r;
    for (const auto& [u, v] : digraph.arcs()) {
      if (table(v, u) == r) entry.arcs.emplace_back(u, v);
    }
    entry.pure = is_pure_definitional(digraph, table, r + 1, path_budget).pure;
    profile.types.push_back(std::move(entry));
  }
  return profile;
}

bool is_mixed_via_tensor(const IntersectionTensor& p, int q) {
  if (q < 3) throw ContractError("tensor mixing criterion needs q >= 3");
  if (!is_commutative(p) || !is_quasi_thin(p)) {
    throw ContractError(
        "tensor mixing criterion needs a commutative quasi-thin scheme");
  }
  const RelationIndex a = require_relation(p, 1, q - 1);
  for (const auto& [h, v] : p.support(a, a)) {
    if (p.type(h).forward == 1) return true;
  }
  return false;
}

bool config_exists(const IntersectionTensor& p, int q, int h) {
  if (q <= 2 || h <= 2 || q == h) {
    throw ContractError("configuration needs distinct q, h > 2");
  }
  const RelationIndex a = require_relation(p, 1, q - 1);
  const RelationIndex b = require_relation(p, 1, h - 1);
  const std::array<RelationIndex, 1> aa{a}, bb{b}, a_star{p.star(a)};
  const RelationSet square = relation_product(p, aa, aa);
  const auto two = p.find({2, q - 2});
  if (!two || square != RelationSet{*two}) return false;
  const RelationSet h_square = relation_product(p, bb, bb);
  const RelationSet there_and_back = relation_product(p, aa, a_star);
  return std::includes(there_and_back.begin(), there_and_back.end(),
                       h_square.begin(), h_square.end());
}

CaseVerdict classify_case(const Digraph& digraph, const DistanceTable& table,
                          const IntersectionTensor& p) {
  if (!is_commutative(p) || !is_quasi_thin(p)) {
    throw ContractError("case analysis needs a commutative quasi-thin WDRD");
  }
  if (p.valency() <= 3) {
    throw ContractError("case analysis needs valency > 3, got " +
                        std::to_string(p.valency()));
  }
  CaseVerdict verdict;
  verdict.k_set = k_set_of(digraph, table);
  const auto& k = verdict.k_set;
  auto has = [&](std::int32_t r) {
    return std::binary_search(k.begin(), k.end(), r);
  };
  auto shape = [&](std::initializer_list<std::int32_t> rs) {
    std::vector<std::int32_t> want(rs);
    std::sort(want.begin(), want.end());
    if (std::adjacent_find(want.begin(), want.end()) != want.end()) {
      return false;
    }
    return want == k;
  };
  auto mixed = [&](int q) {
    const bool m = is_mixed_via_tensor(p, q);
    verdict.facts["(1," + std::to_string(q - 1) + ") mixed"] = m;
    return m;
  };
  auto config = [&](int q, int h) {
    const bool c = config_exists(p, q, h);
    verdict.facts["C_{" + std::to_string(q) + "," + std::to_string(h) +
                  "} exists"] = c;
    return c;
  };

  std::vector<std::pair<std::string, int>> matches;
  for (std::int32_t r : k) {
    const int q = r + 1;  // candidate with (1,q-1) = (1,r)
    if (q >= 4 && shape({1, 2, q - 1}) && config(q, 3)) {
      matches.emplace_back("C1", q);
    }
    if (q >= 5 && shape({3, q - 1, q}) && config(q, 4) && mixed(q + 1)) {
      matches.emplace_back("C2", q);
    }
    if (q >= 4 && shape({1, 2, q - 1, q}) && config(q, 3) && mixed(q + 1)) {
      matches.emplace_back("C3", q);
    }
    if (q >= 3 && shape({1, q - 1}) && !mixed(q)) {
      matches.emplace_back("C4", q);
    }
    if (q >= 2 && has(q) && shape({q - 1, q}) && mixed(q + 1)) {
      matches.emplace_back("C5", q);
    }
    if (q >= 3 && shape({1, q - 1, q}) && mixed(q + 1)) {
      matches.emplace_back("C6", q);
    }
  }
  std::sort(matches.begin(), matches.end());
  matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
  if (matches.size() > 1) {
    std::string both;
    for (const auto& [id, q] : matches) {
      if (!both.empty()) both += " and ";
      both += id + " (q=" + std::to_string(q) + ")";
    }
    throw ConsistencyError("arc types match more than one case: " + both);
  }
  if (matches.size() == 1) {
    verdict.case_id = matches[0].first;
    verdict.q = matches[0].second;
  }
  return verdict;
}

bool ClosedSubset::contains(RelationIndex i) const {
  return std::binary_search(relations.begin(), relations.end(), i);
}

ClosedSubset closed_subset(const IntersectionTensor& p,
                           std::span<const RelationIndex> generators) {
  if (generators.empty()) throw StructuralError("closed subset needs generators");
  const std::size_t r = p.relation_count();
  std::vector<char> in(r, 0);
  in[p.identity_index()] = 1;
  for (RelationIndex g : generators) {
    if (g >= r) throw StructuralError("relation index out of range");
    in[g] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (RelationIndex i = 0; i < r; ++i) {
      if (!in[i]) continue;
      for (RelationIndex j = 0; j < r; ++j) {
        if (!in[j]) continue;
        for (const auto& [h, v] : p.support(p.star(i), j)) {
          if (!in[h]) {
            in[h] = 1;
            grew = true;
          }
        }
      }
    }
  }
  ClosedSubset closed;
  for (RelationIndex i = 0; i < r; ++i) {
    if (in[i]) closed.relations.push_back(i);
  }
  closed.generators.assign(generators.begin(), generators.end());
  std::sort(closed.generators.begin(), closed.generators.end());
  closed.generators.erase(
      std::unique(closed.generators.begin(), closed.generators.end()),
      closed.generators.end());
  return closed;
}

Subdigraph delta_component(const Digraph& digraph, const DistanceTable& table,
                           Vertex x, std::span<const int> qs) {
  const std::size_t n = digraph.vertex_count();
  if (x >= n) throw StructuralError("vertex id out of range");
  if (qs.empty()) throw StructuralError("delta component needs at least one q");
  const std::vector<std::int32_t> k = k_set_of(digraph, table);
  std::vector<std::int32_t> backs;
  for (int q : qs) {
    if (!std::binary_search(k.begin(), k.end(), q - 1)) {
      throw StructuralError("arc type " + pair_text(1, q - 1) +
                            " does not occur");
    }
    backs.push_back(q - 1);
  }
  auto selected = [&](Vertex u, Vertex v) {
    return std::find(backs.begin(), backs.end(), table(v, u)) != backs.end();
  };

  std::vector<std::vector<Vertex>> fwd(n), both(n);
  for (const auto& [u, v] : digraph.arcs()) {
    if (!selected(u, v)) continue;
    fwd[u].push_back(v);
    both[u].push_back(v);
    both[v].push_back(u);
  }
  auto closure = [&](const std::vector<std::vector<Vertex>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{x};
    seen[x] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  const std::vector<char> forward = closure(fwd);
  if (forward != closure(both)) {
    throw ConsistencyError(
        "forward closure differs from the weakly connected component at "
        "vertex " + std::to_string(x));
  }

  Subdigraph sub;
  std::vector<Vertex> local(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (forward[v]) {
      local[v] = static_cast<Vertex>(sub.original.size());
      sub.original.push_back(v);
    }
  }
  std::vector<std::vector<Vertex>> out(sub.original.size());
  std::vector<std::string> labels;
  for (Vertex v : sub.original) {
    for (Vertex w : fwd[v]) out[local[v]].push_back(local[w]);
    labels.push_back(digraph.labels().empty() ? std::to_string(v)
                                              : digraph.labels()[v]);
  }
  sub.digraph = Digraph(sub.original.size(), std::move(out), std::move(labels));
  return sub;
}

Quotient quotient(const Digraph& digraph, const RelationPartition& rel,
                  const IntersectionTensor& p, const ClosedSubset& closed) {
  const std::size_t n = digraph.vertex_count();
  if (rel.vertex_count() != n || rel.relation_count() != p.relation_count()) {
    throw StructuralError("relations do not match digraph or tensor");
  }
  constexpr Vertex kUnassigned = static_cast<Vertex>(-1);
  std::vector<Vertex> block_of(n, kUnassigned);
  Quotient result;
  for (Vertex x = 0; x < n; ++x) {
    if (block_of[x] != kUnassigned) continue;
    const auto b = static_cast<Vertex>(result.blocks.size());
    std::vector<Vertex> members;
    for (Vertex y = 0; y < n; ++y) {
      if (closed.contains(rel.type_of(x, y))) {
        if (block_of[y] != kUnassigned) {
          throw ConsistencyError("relation set is not closed: blocks overlap");
        }
        block_of[y] = b;
        members.push_back(y);
      }
    }
    result.blocks.push_back(std::move(members));
  }

  // F Γ_{1,s} F for every arc type.
  std::vector<char> reach(p.relation_count(), 0);
  for (RelationIndex a = 0; a < p.relation_count(); ++a) {
    if (p.type(a).forward != 1) continue;
    const std::array<RelationIndex, 1> aa{a};
    const RelationSet left = relation_product(p, closed.relations, aa);
    for (RelationIndex h : relation_product(p, left, closed.relations)) {
      reach[h] = 1;
    }
  }
  std::vector<std::vector<Vertex>> out(result.blocks.size());
  std::vector<std::string> labels;
  for (Vertex b = 0; b < result.blocks.size(); ++b) {
    const Vertex x = result.blocks[b].front();
    for (Vertex y = 0; y < n; ++y) {
      const Vertex c = block_of[y];
      if (c != b && reach[rel.type_of(x, y)]) out[b].push_back(c);
    }
    std::sort(out[b].begin(), out[b].end());
    out[b].erase(std::unique(out[b].begin(), out[b].end()), out[b].end());
    std::string label = "{";
    for (std::size_t k = 0; k < result.blocks[b].size(); ++k) {
      const Vertex v = result.blocks[b][k];
      if (k > 0) label += ',';
      label += digraph.labels().empty() ? std::to_string(v)
                                        : digraph.labels()[v];
    }
    labels.push_back(label + "}");
  }
  result.digraph =
      Digraph(result.blocks.size(), std::move(out), std::move(labels));
  return result;
}

}  // namespace wdrd
