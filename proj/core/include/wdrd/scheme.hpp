#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wdrd/digraph.hpp"
#include "wdrd/errors.hpp"

namespace wdrd {

using RelationIndex = std::uint32_t;
// Sorted, duplicate-free list of relation indices.
using RelationSet = std::vector<RelationIndex>;

// The relations Γ_ĩ = {(x,y) : ∂̃(x,y) = ĩ} of a strongly connected digraph.
// Relation types are sorted lexicographically, so (0,0) has index 0.
class RelationPartition {
 public:
  RelationPartition(std::size_t vertex_count, std::vector<TwoWayDistance> types,
                    std::vector<RelationIndex> type_of);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t relation_count() const noexcept { return types_.size(); }
  const std::vector<TwoWayDistance>& types() const noexcept { return types_; }
  const TwoWayDistance& type(RelationIndex i) const { return types_.at(i); }

  RelationIndex type_of(Vertex x, Vertex y) const {
    return type_of_[static_cast<std::size_t>(x) * n_ + y];
  }
  std::optional<RelationIndex> find(TwoWayDistance t) const;
  // Throws StructuralError when t does not occur.
  RelationIndex index_of(TwoWayDistance t) const;
  RelationIndex star(RelationIndex i) const { return star_.at(i); }

  // Γ_ĩ(x), sorted.
  std::span<const Vertex> members(RelationIndex i, Vertex x) const;
  // Number of ordered pairs in Γ_ĩ.
  std::size_t relation_size(RelationIndex i) const;
  // Dense 0/1 adjacency matrix A_ĩ in row-major order.
  std::vector<std::uint8_t> indicator(RelationIndex i) const;

 private:
  std::size_t n_;
  std::vector<TwoWayDistance> types_;
  std::vector<RelationIndex> type_of_;
  std::vector<RelationIndex> star_;
  // CSR per relation: offsets_[i] has n+1 entries into columns_[i].
  std::vector<std::vector<std::uint32_t>> offsets_;
  std::vector<std::vector<Vertex>> columns_;
};

RelationPartition compute_relations(const Digraph& digraph,
                                    const DistanceTable& table);

// Two pairs of the same relation h̃ whose |P_{ĩ,j̃}| counts differ.
struct WdrdWitness {
  RelationIndex h = 0;
  RelationIndex i = 0;
  RelationIndex j = 0;
  Arc first{};
  Arc second{};
  std::int64_t first_count = 0;
  std::int64_t second_count = 0;

  std::string describe(const RelationPartition& relations) const;
};

struct WdrdVerdict {
  bool is_wdrd = false;
  std::optional<WdrdWitness> witness;
};

// For every pair (ĩ,j̃) checks that A_ĩ A_j̃ is constant on the support of
// each A_h̃. Reports the first failure.
WdrdVerdict check_wdrd(const RelationPartition& relations);

class NotWdrdError : public ContractError {
 public:
  NotWdrdError(WdrdVerdict verdict, const std::string& detail);
  const WdrdVerdict& verdict() const noexcept { return verdict_; }

 private:
  WdrdVerdict verdict_;
};

// Dense tensor of intersection numbers p^h̃_{ĩ,j̃} over relation indices.
class IntersectionTensor {
 public:
  // entries are indexed [h][i][j] in row-major order.
  IntersectionTensor(std::vector<TwoWayDistance> types,
                     std::vector<std::int64_t> entries);

  std::size_t relation_count() const noexcept { return types_.size(); }
  const std::vector<TwoWayDistance>& types() const noexcept { return types_; }
  const TwoWayDistance& type(RelationIndex i) const { return types_.at(i); }
  std::optional<RelationIndex> find(TwoWayDistance t) const;
  RelationIndex index_of(TwoWayDistance t) const;
  RelationIndex star(RelationIndex i) const { return star_.at(i); }
  RelationIndex identity_index() const noexcept { return 0; }

  std::int64_t operator()(RelationIndex h, RelationIndex i,
                          RelationIndex j) const {
    const std::size_t r = types_.size();
    return entries_[(static_cast<std::size_t>(h) * r + i) * r + j];
  }
  // Nonzero (h̃, p^h̃_{ĩ,j̃}) for fixed (ĩ,j̃), sorted by h̃.
  std::span<const std::pair<RelationIndex, std::int64_t>> support(
      RelationIndex i, RelationIndex j) const;

  // k_ĩ = p^{(0,0)}_{ĩ,ĩ*}
  std::int64_t valency(RelationIndex i) const { return valencies_.at(i); }
  const std::vector<std::int64_t>& valencies() const noexcept {
    return valencies_;
  }
  // k = sum of k_{1,j} over arc types (1,j).
  std::int64_t valency() const noexcept { return total_valency_; }

  // Copy with one entry replaced; used for negative controls.
  IntersectionTensor with_entry(RelationIndex h, RelationIndex i,
                                RelationIndex j, std::int64_t value) const;

 private:
  std::vector<TwoWayDistance> types_;
  std::vector<std::int64_t> entries_;
  std::vector<RelationIndex> star_;
  std::vector<std::int64_t> valencies_;
  std::int64_t total_valency_ = 0;
  std::vector<std::vector<std::pair<RelationIndex, std::int64_t>>> support_;
};

// Throws NotWdrdError (carrying the witness) unless the partition is WDRD.
IntersectionTensor intersection_tensor(const RelationPartition& relations);

bool is_commutative(const IntersectionTensor& tensor);
std::int64_t max_intersection_number(const IntersectionTensor& tensor);
// max ≤ 2
bool is_quasi_thin(const IntersectionTensor& tensor);
// max ≤ 1
bool is_thin(const IntersectionTensor& tensor);

// EF = {Γ_h̃ : Σ_{ĩ∈E, j̃∈F} p^h̃_{ĩ,j̃} ≠ 0}
RelationSet relation_product(const IntersectionTensor& tensor,
                             std::span<const RelationIndex> e,
                             std::span<const RelationIndex> f);

struct IdentityCheck {
  bool passed = true;
  std::uint64_t checked = 0;
  // First violating index tuple, in the order the identity names them.
  std::vector<RelationIndex> witness;
  std::string detail;
};

// Identities (i)-(vi) relating valencies and intersection numbers of an
// association scheme. identities[0] is (i).
struct Lemma1Report {
  std::array<IdentityCheck, 6> identities;

  bool all_passed() const noexcept;
};

Lemma1Report check_lemma1(const IntersectionTensor& tensor);

}  // namespace wdrd
