#include "wdrd/iso.hpp"

#include <algorithm>
#include <numeric>

#include "wdrd/errors.hpp"

namespace wdrd {

namespace {

using Colouring = std::vector<std::uint32_t>;

class Refiner {
 public:
  explicit Refiner(const Digraph& digraph) : n_(digraph.vertex_count()) {
    dist_.resize(n_ * n_);
    for (Vertex v = 0; v < n_; ++v) {
      const auto row = bfs_distances(digraph, v);
      std::copy(row.begin(), row.end(), dist_.begin() + v * n_);
    }
  }

  std::size_t size() const noexcept { return n_; }

  Colouring initial() const {
    Colouring c(n_, 0);
    refine(c);
    return c;
  }

  // Gives v a colour of its own, then refines.
  Colouring individualize(const Colouring& c, Vertex v) const {
    Colouring next(n_);
    for (Vertex u = 0; u < n_; ++u) next[u] = 2 * c[u] + (u == v ? 0 : 1);
    refine(next);
    return next;
  }

 private:
  std::int64_t d(Vertex x, Vertex y) const { return dist_[x * n_ + y]; }

  // Replaces colours by ranks of (colour, multiset of (colour, ∂, ∂ back))
  // until the number of cells stops growing.
  void refine(Colouring& c) const {
    const std::int64_t k = static_cast<std::int64_t>(n_) + 2;
    std::vector<std::vector<std::int64_t>> sig(n_);
    std::size_t cells = count(c);
    while (true) {
      for (Vertex v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(c[v]);
        for (Vertex u = 0; u < n_; ++u) {
          if (u == v) continue;
          s.push_back((static_cast<std::int64_t>(c[u]) * k + d(v, u) + 1) * k +
                      d(u, v) + 1);
        }
        std::sort(s.begin() + 1, s.end());
      }
      std::vector<Vertex> order(n_);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](Vertex a, Vertex b) { return sig[a] < sig[b]; });
      std::uint32_t rank = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
        c[order[i]] = rank;
      }
      const std::size_t now = n_ == 0 ? 0 : rank + 1;
      if (now == cells) break;
      cells = now;
    }
  }

  static std::size_t count(const Colouring& c) {
    if (c.empty()) return 0;
    return *std::max_element(c.begin(), c.end()) + 1;
  }

  std::size_t n_;
  std::vector<std::int64_t> dist_;
};

std::vector<std::size_t> cell_sizes(const Colouring& c) {
  std::vector<std::size_t> sizes;
  for (auto colour : c) {
    if (colour >= sizes.size()) sizes.resize(colour + 1, 0);
    ++sizes[colour];
  }
  return sizes;
}

// Smallest non-singleton cell, lowest colour on ties; nullopt if discrete.
std::optional<std::uint32_t> target_cell(const Colouring& c) {
  const auto sizes = cell_sizes(c);
  std::optional<std::uint32_t> best;
  for (std::uint32_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] > 1 && (!best || sizes[k] < sizes[*best])) best = k;
  }
  return best;
}

std::vector<Vertex> members(const Colouring& c, std::uint32_t colour) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < c.size(); ++v) {
    if (c[v] == colour) out.push_back(v);
  }
  return out;
}

std::vector<Arc> relabel(const Digraph& digraph, const Colouring& c) {
  std::vector<Arc> arcs;
  arcs.reserve(digraph.arc_count());
  for (const auto& [u, v] : digraph.arcs()) arcs.emplace_back(c[u], c[v]);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Digraph& digraph)
      : digraph_(digraph), refiner_(digraph) {}

  CanonicalForm run() {
    std::vector<Vertex> prefix;
    descend(refiner_.initial(), prefix);
    CanonicalForm form;
    form.vertex_count = digraph_.vertex_count();
    form.arcs = std::move(best_.arcs);
    form.labelling.assign(best_.colouring.begin(), best_.colouring.end());
    return form;
  }

 private:
  struct Leaf {
    Colouring colouring;
    std::vector<Vertex> prefix;
    std::vector<Arc> arcs;
  };

  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);

  // Returns kNoJump, or the depth whose child loop should resume.
  std::size_t descend(const Colouring& c, std::vector<Vertex>& prefix) {
    const auto cell = target_cell(c);
    if (!cell) return leaf(c, prefix);
    const std::size_t depth = prefix.size();
    std::vector<Vertex> explored;
    std::vector<Vertex> orbit;
    std::size_t known = kNoJump;
    for (Vertex v : members(c, *cell)) {
      // Children in one orbit of the stabilizer of prefix have isomorphic
      // subtrees.
      if (known != automorphisms_.size()) {
        orbit = stabilizer_orbits(prefix);
        known = automorphisms_.size();
      }
      const bool seen = std::any_of(explored.begin(), explored.end(),
                                    [&](Vertex u) { return root(orbit, u) == root(orbit, v); });
      if (seen) continue;
      explored.push_back(v);
      prefix.push_back(v);
      const std::size_t jump = descend(refiner_.individualize(c, v), prefix);
      prefix.pop_back();
      if (jump != kNoJump && jump < depth) return jump;
    }
    return kNoJump;
  }

  std::size_t leaf(const Colouring& c, const std::vector<Vertex>& prefix) {
    std::vector<Arc> arcs = relabel(digraph_, c);
    if (!have_first_) {
      first_ = {c, prefix, arcs};
      best_ = {c, prefix, std::move(arcs)};
      have_first_ = true;
      return kNoJump;
    }
    for (const Leaf* ref : {&first_, &best_}) {
      if (arcs != ref->arcs) continue;
      return record(*ref, c, prefix);
    }
    if (arcs < best_.arcs) best_ = {c, prefix, std::move(arcs)};
    return kNoJump;
  }

  // Same relabelled arcs as ref: v -> w with c[w] = ref.colouring[v] is an
  // automorphism.
  std::size_t record(const Leaf& ref, const Colouring& c, const std::vector<Vertex>& prefix) {
    const std::size_t n = c.size();
    std::vector<Vertex> inverse(n);
    for (Vertex w = 0; w < n; ++w) inverse[c[w]] = w;
    std::vector<Vertex> gamma(n);
    for (Vertex v = 0; v < n; ++v) gamma[v] = inverse[ref.colouring[v]];
    automorphisms_.push_back(gamma);
    // Jump back to the deepest common ancestor, provided gamma fixes it
    // and carries the branch taken towards ref onto the current branch.
    std::size_t common = 0;
    while (common < prefix.size() && common < ref.prefix.size() &&
           prefix[common] == ref.prefix[common]) {
      ++common;
    }
    if (common >= prefix.size() || common >= ref.prefix.size()) return kNoJump;
    for (std::size_t i = 0; i < common; ++i) {
      if (gamma[prefix[i]] != prefix[i]) return kNoJump;
    }
    if (gamma[ref.prefix[common]] != prefix[common]) return kNoJump;
    return common;
  }

  std::vector<Vertex> stabilizer_orbits(const std::vector<Vertex>& prefix) const {
    std::vector<Vertex> orbit(digraph_.vertex_count());
    std::iota(orbit.begin(), orbit.end(), 0);
    for (const auto& gamma : automorphisms_) {
      const bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                     [&](Vertex v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (Vertex v = 0; v < orbit.size(); ++v) {
        const Vertex a = root(orbit, v), b = root(orbit, gamma[v]);
        if (a != b) orbit[std::max(a, b)] = std::min(a, b);
      }
    }
    return orbit;
  }

  static Vertex root(std::vector<Vertex>& orbit, Vertex v) {
    while (orbit[v] != v) v = orbit[v] = orbit[orbit[v]];
    return v;
  }
  static Vertex root(const std::vector<Vertex>& orbit, Vertex v) {
    while (orbit[v] != v) v = orbit[v];
    return v;
  }

  const Digraph& digraph_;
  Refiner refiner_;
  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  std::vector<std::vector<Vertex>> automorphisms_;
};

}  // namespace

CanonicalForm canonical_form(const Digraph& digraph) {
  return CanonicalSearch(digraph).run();
}

bool verify_isomorphism(const Digraph& from, const Digraph& to,
                        const std::vector<Vertex>& mapping) {
  const std::size_t n = from.vertex_count();
  if (to.vertex_count() != n || mapping.size() != n ||
      from.arc_count() != to.arc_count()) {
    return false;
  }
  std::vector<char> hit(n, 0);
  for (Vertex v : mapping) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  // Equal arc counts plus injectivity make arc preservation sufficient.
  for (const auto& [u, v] : from.arcs()) {
    if (!to.has_arc(mapping[u], mapping[v])) return false;
  }
  return true;
}

std::optional<IsoCertificate> are_isomorphic(const Digraph& a,
                                             const Digraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count()) {
    return std::nullopt;
  }
  const CanonicalForm fa = canonical_form(a);
  const CanonicalForm fb = canonical_form(b);
  if (!(fa == fb)) return std::nullopt;
  std::vector<Vertex> inverse(fb.labelling.size());
  for (Vertex w = 0; w < inverse.size(); ++w) inverse[fb.labelling[w]] = w;
  IsoCertificate cert;
  cert.mapping.resize(fa.labelling.size());
  for (Vertex v = 0; v < cert.mapping.size(); ++v) cert.mapping[v] = inverse[fa.labelling[v]];
  cert.verified = verify_isomorphism(a, b, cert.mapping);
  if (!cert.verified) throw ConsistencyError("canonical forms agree but the induced map is not an isomorphism");
  return cert;
}

}  // namespace wdrd
