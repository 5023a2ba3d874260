#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wdrd/digraph.hpp"
#include "wdrd/scheme.hpp"

namespace wdrd {

inline constexpr std::size_t kDefaultPathBudget = 1'000'000;

// (1, ∂(v,u)) for an arc (u,v). Throws StructuralError for non-arcs.
TwoWayDistance arc_type(const Digraph& digraph, const DistanceTable& table,
                        Vertex u, Vertex v);

struct PurityResult {
  bool pure = true;
  // Vertices of one offending circuit, starting with the tail of the
  // (1,q-1) arc; empty when pure.
  std::vector<Vertex> witness_circuit;
  // Types of the witness circuit's arcs, in order, including the closing arc.
  std::vector<TwoWayDistance> witness_types;
  // Circuits accounted for, including pure branches counted without being
  // walked.
  std::uint64_t paths_examined = 0;
};

// Decides whether every circuit of length q through every arc of type
// (1,q-1) uses only arcs of that type. Throws ResourceError when one arc
// needs more than path_budget walked paths.
PurityResult is_pure_definitional(const Digraph& digraph,
                                  const DistanceTable& table, int q,
                                  std::size_t path_budget = kDefaultPathBudget);

struct ArcTypeEntry {
  // The arc type is (1, back_distance).
  std::int32_t back_distance = 0;
  bool pure = true;
  std::vector<Arc> arcs;
};

// K = {(1,r)} with per-type arc lists and definitional purity.
struct ArcTypeProfile {
  std::vector<ArcTypeEntry> types;  // sorted by back_distance

  std::vector<std::int32_t> back_distances() const;
  bool contains(std::int32_t r) const;
  const ArcTypeEntry& entry(std::int32_t r) const;
};

ArcTypeProfile arc_type_profile(const Digraph& digraph,
                                const DistanceTable& table,
                                std::size_t path_budget = kDefaultPathBudget);

// Tensor criterion: (1,q-1) is mixed iff p^{(1,s-1)}_{(1,q-1),(1,q-1)} ≠ 0
// for some s. Requires q ≥ 3 and a commutative quasi-thin tensor.
bool is_mixed_via_tensor(const IntersectionTensor& tensor, int q);

// C_{q,h}: (Γ_{1,q-1})² = {Γ_{2,q-2}} and (Γ_{1,h-1})² ⊆ Γ_{1,q-1}Γ_{q-1,1}.
bool config_exists(const IntersectionTensor& tensor, int q, int h);

struct CaseVerdict {
  std::string case_id = "unclassified";  // "C1".."C6" or "unclassified"
  int q = 0;
  std::vector<std::int32_t> k_set;  // back distances r of (1,r) ∈ K
  std::map<std::string, bool> facts;
};

// Matches K against the six shapes C1-C6. Throws ContractError unless the
// tensor is commutative, quasi-thin and of valency > 3, and
// ConsistencyError if more than one case matches.
CaseVerdict classify_case(const Digraph& digraph, const DistanceTable& table,
                          const IntersectionTensor& tensor);

struct ClosedSubset {
  RelationSet relations;
  RelationSet generators;

  bool contains(RelationIndex i) const;
};

// ⟨F⟩: least set containing F and (0,0) with Γ_{ĩ*}Γ_j̃ inside it for all
// members ĩ, j̃.
ClosedSubset closed_subset(const IntersectionTensor& tensor,
                           std::span<const RelationIndex> generators);

struct Subdigraph {
  Digraph digraph;
  // original[v] is the vertex of the parent digraph behind vertex v.
  std::vector<Vertex> original;
};

// Δ_{q1..ql}(x): component of x in the digraph of arcs whose type is one
// of (1,q_i-1). Forward closure is checked against the weak component and
// a mismatch raises ConsistencyError.
Subdigraph delta_component(const Digraph& digraph, const DistanceTable& table,
                           Vertex x, std::span<const int> qs);

struct Quotient {
  Digraph digraph;
  // blocks[b] lists the parent vertices of block b, sorted; blocks are
  // ordered by their smallest member.
  std::vector<std::vector<Vertex>> blocks;
};

// Γ/F for a closed subset F. Loops on blocks are dropped.
Quotient quotient(const Digraph& digraph, const RelationPartition& relations,
                  const IntersectionTensor& tensor, const ClosedSubset& closed);

}  // namespace wdrd
