#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wdrd/digraph.hpp"

namespace wdrd {

struct IsoCertificate {
  // mapping[v] is the image in the second digraph of vertex v of the first.
  std::vector<Vertex> mapping;
  bool verified = false;
};

struct CanonicalForm {
  std::size_t vertex_count = 0;
  std::vector<Arc> arcs;  // relabelled, sorted
  // labelling[v] is the canonical index of vertex v.
  std::vector<Vertex> labelling;

  // Only vertex_count and arcs take part in comparisons.
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.vertex_count == b.vertex_count && a.arcs == b.arcs;
  }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.vertex_count != b.vertex_count) return a.vertex_count < b.vertex_count;
    return a.arcs < b.arcs;
  }
};

// Partition refinement on two-way distance profiles, then individualization
// of the smallest non-singleton cell; the lexicographically least relabelled
// arc list over all leaves is the canonical form.
CanonicalForm canonical_form(const Digraph& digraph);

// True iff mapping is a bijection carrying arcs onto arcs and non-arcs onto
// non-arcs.
bool verify_isomorphism(const Digraph& from, const Digraph& to,
                        const std::vector<Vertex>& mapping);

std::optional<IsoCertificate> are_isomorphic(const Digraph& a,
                                             const Digraph& b);

}  // namespace wdrd
