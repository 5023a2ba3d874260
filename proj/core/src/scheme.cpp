#include "wdrd/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wdrd {

namespace {

std::vector<RelationIndex> star_map(const std::vector<TwoWayDistance>& types) {
  std::vector<RelationIndex> star(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    auto it = std::lower_bound(types.begin(), types.end(), types[i].reversed());
    if (it == types.end() || *it != types[i].reversed()) {
      throw StructuralError("relation " + types[i].to_string() +
                            " has no transpose " +
                            types[i].reversed().to_string());
    }
    star[i] = static_cast<RelationIndex>(it - types.begin());
  }
  return star;
}

std::optional<RelationIndex> find_type(const std::vector<TwoWayDistance>& types,
                                       TwoWayDistance t) {
  auto it = std::lower_bound(types.begin(), types.end(), t);
  if (it == types.end() || *it != t) return std::nullopt;
  return static_cast<RelationIndex>(it - types.begin());
}

std::string tuple_text(std::initializer_list<RelationIndex> idx,
                       const IntersectionTensor& p) {
  std::string out;
  for (RelationIndex k : idx) {
    if (!out.empty()) out += ' ';
    out += p.type(k).to_string();
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RelationPartition

RelationPartition::RelationPartition(std::size_t vertex_count,
                                     std::vector<TwoWayDistance> types,
                                     std::vector<RelationIndex> type_of)
    : n_(vertex_count), types_(std::move(types)), type_of_(std::move(type_of)) {
  if (type_of_.size() != n_ * n_) {
    throw StructuralError("relation map has wrong size");
  }
  if (!std::is_sorted(types_.begin(), types_.end()) ||
      std::adjacent_find(types_.begin(), types_.end()) != types_.end()) {
    throw StructuralError("relation types must be sorted and distinct");
  }
  star_ = star_map(types_);
  const std::size_t r = types_.size();
  offsets_.assign(r, std::vector<std::uint32_t>(n_ + 1, 0));
  columns_.assign(r, {});
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      const RelationIndex t = type_of_[x * n_ + y];
      if (t >= r) throw StructuralError("relation index out of range");
      ++offsets_[t][x + 1];
    }
  }
  for (std::size_t t = 0; t < r; ++t) {
    std::partial_sum(offsets_[t].begin(), offsets_[t].end(),
                     offsets_[t].begin());
    columns_[t].resize(offsets_[t][n_]);
  }
  std::vector<std::vector<std::uint32_t>> fill(r);
  for (std::size_t t = 0; t < r; ++t) {
    fill[t].assign(offsets_[t].begin(), offsets_[t].end() - 1);
  }
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      const RelationIndex t = type_of_[x * n_ + y];
      columns_[t][fill[t][x]++] = static_cast<Vertex>(y);
    }
  }
}

std::optional<RelationIndex> RelationPartition::find(TwoWayDistance t) const {
  return find_type(types_, t);
}

RelationIndex RelationPartition::index_of(TwoWayDistance t) const {
  if (auto i = find(t)) return *i;
  throw StructuralError("relation " + t.to_string() + " does not occur");
}

std::span<const Vertex> RelationPartition::members(RelationIndex i,
                                                   Vertex x) const {
  const auto& off = offsets_.at(i);
  return {columns_[i].data() + off[x], off[x + 1] - off[x]};
}

std::size_t RelationPartition::relation_size(RelationIndex i) const {
  return columns_.at(i).size();
}

std::vector<std::uint8_t> RelationPartition::indicator(RelationIndex i) const {
  std::vector<std::uint8_t> a(n_ * n_, 0);
  for (Vertex x = 0; x < n_; ++x) {
    for (Vertex y : members(i, x)) a[static_cast<std::size_t>(x) * n_ + y] = 1;
  }
  return a;
}

RelationPartition compute_relations(const Digraph& digraph,
                                    const DistanceTable& table) {
  const std::size_t n = digraph.vertex_count();
  if (table.vertex_count() != n) {
    throw StructuralError("distance table does not match digraph");
  }
  std::vector<TwoWayDistance> types;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) types.push_back(two_way(table, x, y));
  }
  std::vector<TwoWayDistance> sorted = types;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<RelationIndex> type_of(n * n);
  for (std::size_t k = 0; k < types.size(); ++k) {
    type_of[k] = *find_type(sorted, types[k]);
  }
  return RelationPartition(n, std::move(sorted), std::move(type_of));
}

// ---------------------------------------------------------------------------
// Weak distance-regularity

std::string WdrdWitness::describe(const RelationPartition& relations) const {
  std::ostringstream out;
  out << "h=" << relations.type(h).to_string()
      << " i=" << relations.type(i).to_string()
      << " j=" << relations.type(j).to_string() << ": pair (" << first.first
      << "," << first.second << ") has " << first_count << ", pair ("
      << second.first << "," << second.second << ") has " << second_count;
  return out.str();
}

WdrdVerdict check_wdrd(const RelationPartition& rel) {
  const std::size_t n = rel.vertex_count();
  const std::size_t r = rel.relation_count();
  const RelationIndex id = 0;

  // Row sizes must be constant: p^{(0,0)}_{ĩ,ĩ*} evaluated at (x,x).
  for (RelationIndex i = 0; i < r; ++i) {
    const std::size_t k0 = rel.members(i, 0).size();
    for (Vertex x = 1; x < n; ++x) {
      const std::size_t kx = rel.members(i, x).size();
      if (kx != k0) {
        WdrdWitness w{id, i, rel.star(i), {0, 0}, {x, x},
                      static_cast<std::int64_t>(k0),
                      static_cast<std::int64_t>(kx)};
        return {false, w};
      }
    }
  }

  std::vector<std::int64_t> count(n, 0);
  std::vector<Vertex> touched;
  std::vector<std::int64_t> value(r, 0);
  std::vector<std::size_t> tally(r, 0);
  std::vector<Vertex> first_y(r, 0);
  std::vector<RelationIndex> touched_h;
  std::vector<std::int64_t> expected(r, 0);
  std::vector<Vertex> rep_y(r, 0);

  for (RelationIndex i = 0; i < r; ++i) {
    for (RelationIndex j = 0; j < r; ++j) {
      std::size_t nonzero = 0;
      for (Vertex x = 0; x < n; ++x) {
        touched.clear();
        for (Vertex z : rel.members(i, x)) {
          for (Vertex y : rel.members(j, z)) {
            if (count[y]++ == 0) touched.push_back(y);
          }
        }
        touched_h.clear();
        std::optional<WdrdWitness> failure;
        for (Vertex y : touched) {
          const RelationIndex h = rel.type_of(x, y);
          if (tally[h]++ == 0) {
            value[h] = count[y];
            first_y[h] = y;
            touched_h.push_back(h);
          } else if (!failure && count[y] != value[h]) {
            failure = WdrdWitness{h, i, j, {x, first_y[h]}, {x, y},
                                  value[h], count[y]};
          }
        }
        for (RelationIndex h : touched_h) {
          if (failure) break;
          if (tally[h] != rel.members(h, x).size()) {
            // Some y of type h from x was not reached at all.
            for (Vertex y : rel.members(h, x)) {
              if (count[y] == 0) {
                failure = WdrdWitness{h, i, j, {x, first_y[h]}, {x, y},
                                      value[h], 0};
                break;
              }
            }
          }
        }
        if (!failure) {
          if (x == 0) {
            std::fill(expected.begin(), expected.end(), 0);
            for (RelationIndex h : touched_h) {
              expected[h] = value[h];
              rep_y[h] = first_y[h];
            }
            nonzero = touched_h.size();
          } else {
            for (RelationIndex h : touched_h) {
              if (value[h] != expected[h]) {
                failure = WdrdWitness{h, i, j, {0, rep_y[h]},
                                      {x, first_y[h]}, expected[h], value[h]};
                break;
              }
            }
            if (!failure && touched_h.size() != nonzero) {
              for (RelationIndex h = 0; h < r; ++h) {
                if (expected[h] != 0 && tally[h] == 0) {
                  failure = WdrdWitness{h, i, j, {0, rep_y[h]},
                                        {x, rel.members(h, x)[0]},
                                        expected[h], 0};
                  break;
                }
              }
            }
          }
        }
        for (Vertex y : touched) count[y] = 0;
        for (RelationIndex h : touched_h) tally[h] = 0;
        if (failure) return {false, failure};
      }
    }
  }
  return {true, std::nullopt};
}

NotWdrdError::NotWdrdError(WdrdVerdict verdict, const std::string& detail)
    : ContractError("digraph is not weakly distance-regular: " + detail),
      verdict_(std::move(verdict)) {}

// ---------------------------------------------------------------------------
// IntersectionTensor

IntersectionTensor::IntersectionTensor(std::vector<TwoWayDistance> types,
                                       std::vector<std::int64_t> entries)
    : types_(std::move(types)), entries_(std::move(entries)) {
  const std::size_t r = types_.size();
  if (entries_.size() != r * r * r) {
    throw StructuralError("tensor has wrong number of entries");
  }
  if (r == 0 || types_[0] != TwoWayDistance{0, 0}) {
    throw StructuralError("relation (0,0) must come first");
  }
  star_ = star_map(types_);
  valencies_.resize(r);
  for (RelationIndex i = 0; i < r; ++i) {
    valencies_[i] = (*this)(0, i, star_[i]);
    if (types_[i].forward == 1) total_valency_ += valencies_[i];
  }
  support_.assign(r * r, {});
  for (RelationIndex h = 0; h < r; ++h) {
    for (RelationIndex i = 0; i < r; ++i) {
      for (RelationIndex j = 0; j < r; ++j) {
        const std::int64_t v = (*this)(h, i, j);
        if (v != 0) support_[static_cast<std::size_t>(i) * r + j].emplace_back(h, v);
      }
    }
  }
}

std::optional<RelationIndex> IntersectionTensor::find(TwoWayDistance t) const {
  return find_type(types_, t);
}

RelationIndex IntersectionTensor::index_of(TwoWayDistance t) const {
  if (auto i = find(t)) return *i;
  throw StructuralError("relation " + t.to_string() + " does not occur");
}

std::span<const std::pair<RelationIndex, std::int64_t>>
IntersectionTensor::support(RelationIndex i, RelationIndex j) const {
  return support_.at(static_cast<std::size_t>(i) * types_.size() + j);
}

IntersectionTensor IntersectionTensor::with_entry(RelationIndex h,
                                                  RelationIndex i,
                                                  RelationIndex j,
                                                  std::int64_t value) const {
  const std::size_t r = types_.size();
  if (h >= r || i >= r || j >= r) {
    throw StructuralError("relation index out of range");
  }
  std::vector<std::int64_t> entries = entries_;
  entries[(static_cast<std::size_t>(h) * r + i) * r + j] = value;
  return IntersectionTensor(types_, std::move(entries));
}

IntersectionTensor intersection_tensor(const RelationPartition& rel) {
  WdrdVerdict verdict = check_wdrd(rel);
  if (!verdict.is_wdrd) {
    const std::string detail = verdict.witness->describe(rel);
    throw NotWdrdError(std::move(verdict), detail);
  }
  const std::size_t n = rel.vertex_count();
  const std::size_t r = rel.relation_count();
  std::vector<std::int64_t> entries(r * r * r, 0);
  for (RelationIndex h = 0; h < r; ++h) {
    const Vertex x = 0;
    const Vertex y = rel.members(h, x)[0];
    for (Vertex z = 0; z < n; ++z) {
      const RelationIndex i = rel.type_of(x, z);
      const RelationIndex j = rel.type_of(z, y);
      ++entries[(static_cast<std::size_t>(h) * r + i) * r + j];
    }
  }
  return IntersectionTensor(rel.types(), std::move(entries));
}

bool is_commutative(const IntersectionTensor& p) {
  const std::size_t r = p.relation_count();
  for (RelationIndex h = 0; h < r; ++h) {
    for (RelationIndex i = 0; i < r; ++i) {
      for (RelationIndex j = i + 1; j < r; ++j) {
        if (p(h, i, j) != p(h, j, i)) return false;
      }
    }
  }
  return true;
}

std::int64_t max_intersection_number(const IntersectionTensor& p) {
  std::int64_t best = 0;
  const std::size_t r = p.relation_count();
  for (RelationIndex i = 0; i < r; ++i) {
    for (RelationIndex j = 0; j < r; ++j) {
      for (const auto& [h, v] : p.support(i, j)) best = std::max(best, v);
    }
  }
  return best;
}

bool is_quasi_thin(const IntersectionTensor& p) {
  return max_intersection_number(p) <= 2;
}

bool is_thin(const IntersectionTensor& p) {
  return max_intersection_number(p) <= 1;
}

RelationSet relation_product(const IntersectionTensor& p,
                             std::span<const RelationIndex> e,
                             std::span<const RelationIndex> f) {
  const std::size_t r = p.relation_count();
  std::vector<char> hit(r, 0);
  for (RelationIndex i : e) {
    for (RelationIndex j : f) {
      if (i >= r || j >= r) throw StructuralError("relation index out of range");
      for (const auto& [h, v] : p.support(i, j)) hit[h] = 1;
    }
  }
  RelationSet out;
  for (RelationIndex h = 0; h < r; ++h) {
    if (hit[h]) out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scheme identities

bool Lemma1Report::all_passed() const noexcept {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityCheck& c) { return c.passed; });
}

Lemma1Report check_lemma1(const IntersectionTensor& p) {
  Lemma1Report report;
  const std::size_t r = p.relation_count();
  const auto& k = p.valencies();
  auto fail = [&](int which, std::initializer_list<RelationIndex> idx,
                  std::string detail) {
    IdentityCheck& c = report.identities[which];
    if (!c.passed) return;
    c.passed = false;
    c.witness.assign(idx.begin(), idx.end());
    c.detail = tuple_text(idx, p) + ": " + std::move(detail);
  };

  // (i) k_d k_e = Σ_f p^f_{d,e} k_f
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex e = 0; e < r; ++e) {
      std::int64_t rhs = 0;
      for (const auto& [f, v] : p.support(d, e)) rhs += v * k[f];
      ++report.identities[0].checked;
      if (k[d] * k[e] != rhs) {
        fail(0, {d, e},
             std::to_string(k[d] * k[e]) + " != " + std::to_string(rhs));
      }
    }
  }

  // (ii) p^f_{d,e} k_f = p^d_{f,e*} k_d = p^e_{d*,f} k_e
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex e = 0; e < r; ++e) {
      for (RelationIndex f = 0; f < r; ++f) {
        const std::int64_t a = p(f, d, e) * k[f];
        const std::int64_t b = p(d, f, p.star(e)) * k[d];
        const std::int64_t c = p(e, p.star(d), f) * k[e];
        ++report.identities[1].checked;
        if (a != b || b != c) {
          fail(1, {d, e, f},
               std::to_string(a) + ", " + std::to_string(b) + ", " +
                   std::to_string(c));
        }
      }
    }
  }

  // (iii) |Γ_d Γ_e| ≤ gcd(k_d, k_e)
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex e = 0; e < r; ++e) {
      const std::array<RelationIndex, 1> dd{d}, ee{e};
      const std::size_t size = relation_product(p, dd, ee).size();
      const std::int64_t g = std::gcd(k[d], k[e]);
      ++report.identities[2].checked;
      if (static_cast<std::int64_t>(size) > g) {
        fail(2, {d, e},
             "|product| = " + std::to_string(size) + " > gcd = " +
                 std::to_string(g));
      }
    }
  }

  // (iv) Σ_e p^f_{d,e} = k_d
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex f = 0; f < r; ++f) {
      std::int64_t sum = 0;
      for (RelationIndex e = 0; e < r; ++e) sum += p(f, d, e);
      ++report.identities[3].checked;
      if (sum != k[d]) {
        fail(3, {d, f},
             "row sum " + std::to_string(sum) + " != k = " +
                 std::to_string(k[d]));
      }
    }
  }

  // (v) lcm(k_d, k_e) | p^f_{d,e} k_f
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex e = 0; e < r; ++e) {
      if (k[d] <= 0 || k[e] <= 0) {
        ++report.identities[4].checked;
        fail(4, {d, e}, "nonpositive valency");
        continue;
      }
      const std::int64_t l = std::lcm(k[d], k[e]);
      for (RelationIndex f = 0; f < r; ++f) {
        ++report.identities[4].checked;
        if ((p(f, d, e) * k[f]) % l != 0) {
          fail(4, {d, e, f},
               "lcm " + std::to_string(l) + " does not divide " +
                   std::to_string(p(f, d, e) * k[f]));
        }
      }
    }
  }

  // (vi) Σ_f p^f_{d,e} p^h_{g,f} = Σ_l p^l_{g,d} p^h_{l,e}, compared as
  // sparse vectors over h for every (d,e,g).
  std::vector<std::int64_t> lhs(r, 0), rhs(r, 0);
  std::vector<RelationIndex> used;
  for (RelationIndex d = 0; d < r; ++d) {
    for (RelationIndex e = 0; e < r; ++e) {
      for (RelationIndex g = 0; g < r; ++g) {
        used.clear();
        for (const auto& [f, a] : p.support(d, e)) {
          for (const auto& [h, b] : p.support(g, f)) {
            lhs[h] += a * b;
            used.push_back(h);
          }
        }
        for (const auto& [l, a] : p.support(g, d)) {
          for (const auto& [h, b] : p.support(l, e)) {
            rhs[h] += a * b;
            used.push_back(h);
          }
        }
        ++report.identities[5].checked;
        for (RelationIndex h : used) {
          if (lhs[h] != rhs[h]) {
            fail(5, {d, e, g, h},
                 std::to_string(lhs[h]) + " != " + std::to_string(rhs[h]));
            break;
          }
        }
        for (RelationIndex h : used) lhs[h] = rhs[h] = 0;
      }
    }
  }
  return report;
}

}  // namespace wdrd
