#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wdrd/group.hpp"

namespace wdrd {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

// Finite simple digraph: no loops, no parallel arcs. Out-neighbour lists are
// kept sorted. Immutable after construction.
class Digraph {
 public:
  Digraph() = default;
  // Throws StructuralError on loops, duplicate arcs or out-of-range ids.
  Digraph(std::size_t vertex_count, std::vector<std::vector<Vertex>> out,
          std::vector<std::string> labels = {});

  static Digraph from_arcs(std::size_t vertex_count, std::span<const Arc> arcs,
                           std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t arc_count() const noexcept { return arc_count_; }
  std::span<const Vertex> out(Vertex v) const { return out_.at(v); }
  bool has_arc(Vertex u, Vertex v) const;
  // Lexicographically sorted.
  std::vector<Arc> arcs() const;
  // Empty when the digraph carries no labels.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::string> labels_;
  std::size_t arc_count_ = 0;
};

// Cay(G, S): vertices are the elements of G in lexicographic order, arcs
// x -> x + s. Throws LoopError if S contains the identity and
// StructuralError if S is empty, has repeats or foreign elements.
Digraph from_cayley(const AbelianGroup& group,
                    std::span<const GroupElement> connection_set);

bool is_strongly_connected(const Digraph& digraph);

// BFS distances from one source; -1 marks unreachable vertices.
std::vector<std::int32_t> bfs_distances(const Digraph& digraph, Vertex source);

// All-pairs distances of a strongly connected digraph.
class DistanceTable {
 public:
  DistanceTable(std::size_t n, std::vector<std::int32_t> dist);

  std::size_t vertex_count() const noexcept { return n_; }
  std::int32_t operator()(Vertex x, Vertex y) const {
    return dist_[static_cast<std::size_t>(x) * n_ + y];
  }
  std::span<const std::int32_t> row(Vertex x) const {
    return {dist_.data() + static_cast<std::size_t>(x) * n_, n_};
  }
  std::int32_t diameter() const noexcept;

 private:
  std::size_t n_;
  std::vector<std::int32_t> dist_;
};

// Throws UnreachableError naming a witness pair when D is not strongly
// connected.
DistanceTable distance_table(const Digraph& digraph);

struct TwoWayDistance {
  std::int32_t forward = 0;
  std::int32_t backward = 0;

  TwoWayDistance reversed() const noexcept { return {backward, forward}; }
  std::string to_string() const;

  friend auto operator<=>(const TwoWayDistance&,
                          const TwoWayDistance&) = default;
  friend bool operator==(const TwoWayDistance&,
                         const TwoWayDistance&) = default;
};

TwoWayDistance two_way(const DistanceTable& table, Vertex x, Vertex y);

// Deterministic Graphviz text; arcs emitted in vertex order.
std::string export_dot(const Digraph& digraph);

}  // namespace wdrd
