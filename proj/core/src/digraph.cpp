#include "wdrd/digraph.hpp"

#include <algorithm>
#include <sstream>

#include "wdrd/errors.hpp"

namespace wdrd {

Digraph::Digraph(std::size_t vertex_count,
                 std::vector<std::vector<Vertex>> out,
                 std::vector<std::string> labels)
    : out_(std::move(out)), labels_(std::move(labels)) {
  if (out_.size() != vertex_count) {
    throw StructuralError("adjacency has " + std::to_string(out_.size()) +
                          " rows for " + std::to_string(vertex_count) +
                          " vertices");
  }
  if (!labels_.empty() && labels_.size() != vertex_count) {
    throw StructuralError("label count does not match vertex count");
  }
  for (std::size_t u = 0; u < out_.size(); ++u) {
    auto& row = out_[u];
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] >= vertex_count) {
        throw StructuralError("arc (" + std::to_string(u) + "," +
                              std::to_string(row[k]) +
                              ") leaves the vertex range");
      }
      if (row[k] == u) {
        throw LoopError("loop at vertex " + std::to_string(u));
      }
      if (k > 0 && row[k] == row[k - 1]) {
        throw StructuralError("duplicate arc (" + std::to_string(u) + "," +
                              std::to_string(row[k]) + ")");
      }
    }
    arc_count_ += row.size();
  }
}

Digraph Digraph::from_arcs(std::size_t vertex_count, std::span<const Arc> arcs,
                           std::vector<std::string> labels) {
  std::vector<std::vector<Vertex>> out(vertex_count);
  for (const auto& [u, v] : arcs) {
    if (u >= vertex_count) {
      throw StructuralError("arc tail " + std::to_string(u) +
                            " out of range");
    }
    out[u].push_back(v);
  }
  return Digraph(vertex_count, std::move(out), std::move(labels));
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  const auto& row = out_.at(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> all;
  all.reserve(arc_count_);
  for (Vertex u = 0; u < out_.size(); ++u) {
    for (Vertex v : out_[u]) all.emplace_back(u, v);
  }
  return all;
}

Digraph from_cayley(const AbelianGroup& group,
                    std::span<const GroupElement> connection_set) {
  if (connection_set.empty()) {
    throw StructuralError("connection set is empty");
  }
  std::vector<GroupElement> s(connection_set.begin(), connection_set.end());
  for (const GroupElement& g : s) {
    if (!group.contains(g)) {
      throw StructuralError("connection element " + format_element(g) +
                            " is not a canonical member of " +
                            group.to_string());
    }
    if (g.is_identity()) {
      throw LoopError("connection set contains the identity");
    }
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw StructuralError("connection set has repeated elements");
  }

  const auto n = static_cast<std::size_t>(group.order());
  const std::vector<GroupElement> elements = group.elements();
  std::vector<std::vector<Vertex>> out(n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    out[x].reserve(s.size());
    for (const GroupElement& g : s) {
      out[x].push_back(
          static_cast<Vertex>(group.rank_of(group.add(elements[x], g))));
    }
    labels.push_back(format_element(elements[x]));
  }
  return Digraph(n, std::move(out), std::move(labels));
}

std::vector<std::int32_t> bfs_distances(const Digraph& digraph,
                                        Vertex source) {
  const std::size_t n = digraph.vertex_count();
  std::vector<std::int32_t> dist(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  dist.at(source) = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex v : digraph.out(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool is_strongly_connected(const Digraph& digraph) {
  const std::size_t n = digraph.vertex_count();
  if (n <= 1) return true;
  // Forward reachability from 0 plus reachability in the reverse digraph.
  auto reaches_all = [n](const std::vector<std::vector<Vertex>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  std::vector<std::vector<Vertex>> fwd(n), rev(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : digraph.out(u)) {
      fwd[u].push_back(v);
      rev[v].push_back(u);
    }
  }
  return reaches_all(fwd) && reaches_all(rev);
}

DistanceTable::DistanceTable(std::size_t n, std::vector<std::int32_t> dist)
    : n_(n), dist_(std::move(dist)) {
  if (dist_.size() != n_ * n_) {
    throw StructuralError("distance table has wrong size");
  }
}

std::int32_t DistanceTable::diameter() const noexcept {
  std::int32_t d = 0;
  for (std::int32_t v : dist_) d = std::max(d, v);
  return d;
}

DistanceTable distance_table(const Digraph& digraph) {
  const std::size_t n = digraph.vertex_count();
  std::vector<std::int32_t> dist(n * n);
  for (Vertex x = 0; x < n; ++x) {
    const std::vector<std::int32_t> row = bfs_distances(digraph, x);
    for (Vertex y = 0; y < n; ++y) {
      if (row[y] < 0) throw UnreachableError(x, y);
      dist[static_cast<std::size_t>(x) * n + y] = row[y];
    }
  }
  return DistanceTable(n, std::move(dist));
}

std::string TwoWayDistance::to_string() const {
  return "(" + std::to_string(forward) + "," + std::to_string(backward) + ")";
}

TwoWayDistance two_way(const DistanceTable& table, Vertex x, Vertex y) {
  const std::size_t n = table.vertex_count();
  if (x >= n || y >= n) {
    throw StructuralError("vertex id out of range");
  }
  return {table(x, y), table(y, x)};
}

std::string export_dot(const Digraph& digraph) {
  std::ostringstream out;
  out << "digraph G {\n";
  const auto& labels = digraph.labels();
  for (Vertex v = 0; v < digraph.vertex_count(); ++v) {
    out << "  " << v << " [label=\""
        << (labels.empty() ? std::to_string(v) : labels[v]) << "\"];\n";
  }
  for (const auto& [u, v] : digraph.arcs()) {
    out << "  " << u << " -> " << v << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace wdrd
