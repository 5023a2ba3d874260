#include "wdrd/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "wdrd/errors.hpp"
#include "wdrd/scheme.hpp"

namespace wdrd {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

void invariant_factors(std::int64_t remaining, std::int64_t bound,
                       std::vector<std::int64_t>& prefix,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (remaining == 1) {
    out.push_back(prefix);
    return;
  }
  for (std::int64_t d = std::min(bound, remaining); d >= 2; --d) {
    if (remaining % d != 0 || bound % d != 0) continue;
    prefix.push_back(d);
    invariant_factors(remaining / d, d, prefix, out);
    prefix.pop_back();
  }
}

// Element tables over ranks for fast subset scanning.
struct GroupTables {
  explicit GroupTables(const AbelianGroup& g) : n(g.order()) {
    const auto elements = g.elements();
    sum.resize(n * n);
    neg.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      neg[x] = static_cast<std::uint32_t>(g.rank_of(g.negate(elements[x])));
      for (std::size_t y = 0; y < n; ++y) {
        sum[x * n + y] = static_cast<std::uint32_t>(
            g.rank_of(g.add(elements[x], elements[y])));
      }
    }
  }

  std::size_t n;
  std::vector<std::uint32_t> sum;
  std::vector<std::uint32_t> neg;
};

// Bit j of a mask stands for the element of rank j+1.
class QuickFilter {
 public:
  explicit QuickFilter(const GroupTables& t)
      : t_(t), dist_(t.n), queue_(t.n), count_((t.n + 1) * (t.n + 1), 0) {}

  // Generation, then every two-way distance class from the identity has at
  // most two elements.
  bool pass(Mask mask) {
    const std::size_t n = t_.n;
    std::uint32_t elems[64];
    std::size_t k = 0;
    for (Mask m = mask; m != 0; m &= m - 1) {
      elems[k++] = static_cast<std::uint32_t>(std::countr_zero(m) + 1);
    }
    std::fill(dist_.begin(), dist_.end(), -1);
    dist_[0] = 0;
    std::size_t head = 0, tail = 0;
    queue_[tail++] = 0;
    while (head < tail) {
      const std::uint32_t u = queue_[head++];
      for (std::size_t j = 0; j < k; ++j) {
        const std::uint32_t v = t_.sum[u * n + elems[j]];
        if (dist_[v] < 0) {
          dist_[v] = dist_[u] + 1;
          queue_[tail++] = v;
        }
      }
    }
    if (tail != n) return false;
    bool ok = true;
    std::vector<std::size_t> touched;
    for (std::size_t g = 1; g < n && ok; ++g) {
      const std::size_t key =
          static_cast<std::size_t>(dist_[g]) * (n + 1) + dist_[t_.neg[g]];
      if (++count_[key] > 2) ok = false;
      touched.push_back(key);
    }
    for (std::size_t key : touched) count_[key] = 0;
    return ok;
  }

 private:
  const GroupTables& t_;
  std::vector<std::int32_t> dist_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint8_t> count_;
};

std::vector<GroupElement> subset_elements(const AbelianGroup& g, Mask mask) {
  std::vector<GroupElement> out;
  for (Mask m = mask; m != 0; m &= m - 1) {
    out.push_back(g.element_at(static_cast<std::size_t>(std::countr_zero(m)) + 1));
  }
  return out;
}

bool full_predicates(const AbelianGroup& g, Mask mask) {
  const Digraph d = from_cayley(g, subset_elements(g, mask));
  if (!is_strongly_connected(d)) return false;
  const DistanceTable t = distance_table(d);
  const RelationPartition r = compute_relations(d, t);
  if (!check_wdrd(r).is_wdrd) return false;
  const IntersectionTensor p = intersection_tensor(r);
  return is_commutative(p) && is_quasi_thin(p) && p.valency() > 3;
}

Mask image_mask(const std::vector<std::uint32_t>& phi, Mask mask) {
  Mask out = 0;
  for (Mask m = mask; m != 0; m &= m - 1) {
    out |= Mask{1} << (phi[static_cast<std::size_t>(std::countr_zero(m)) + 1] - 1);
  }
  return out;
}

struct WorkItem {
  std::size_t group = 0;
  Mask begin = 0;
  Mask end = 0;
  const std::vector<Mask>* list = nullptr;  // pruned: explicit representatives
};

}  // namespace

std::vector<AbelianGroup> enumerate_abelian_groups(std::int64_t max_order) {
  if (max_order < 1) throw ContractError("max_order must be at least 1");
  std::vector<AbelianGroup> out;
  out.emplace_back(std::vector<std::int64_t>{1});
  for (std::int64_t m = 2; m <= max_order; ++m) {
    std::vector<std::vector<std::int64_t>> lists;
    std::vector<std::int64_t> prefix;
    invariant_factors(m, m, prefix, lists);
    std::sort(lists.begin(), lists.end(), std::greater<>());
    for (auto& l : lists) out.emplace_back(std::move(l));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> group_automorphisms(
    const AbelianGroup& group) {
  const std::size_t n = static_cast<std::size_t>(group.order());
  const std::size_t k = group.factor_count();
  const auto elements = group.elements();
  // Candidate images of each basis vector: elements whose order divides n_i.
  std::vector<std::vector<std::size_t>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t m = group.moduli()[i];
    for (std::size_t x = 0; x < n; ++x) {
      GroupElement acc = group.identity();
      for (std::int64_t s = 0; s < m; ++s) acc = group.add(acc, elements[x]);
      if (acc.is_identity()) candidates[i].push_back(x);
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::size_t> choice(k, 0);
  while (true) {
    std::vector<std::uint32_t> phi(n);
    std::vector<char> hit(n, 0);
    bool bijective = true;
    for (std::size_t x = 0; x < n && bijective; ++x) {
      GroupElement image = group.identity();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::int64_t s = 0; s < elements[x].coords[i]; ++s) {
          image = group.add(image, elements[candidates[i][choice[i]]]);
        }
      }
      const std::size_t r = group.rank_of(image);
      if (hit[r]) bijective = false;
      hit[r] = 1;
      phi[x] = static_cast<std::uint32_t>(r);
    }
    if (bijective) out.push_back(std::move(phi));
    std::size_t i = 0;
    while (i < k && ++choice[i] == candidates[i].size()) choice[i++] = 0;
    if (i == k) break;
  }
  return out;
}

CensusReport run_census(const CensusOptions& options) {
  if (options.max_order < 8) throw ContractError("census needs max_order >= 8");
  if (options.max_order > 64) {
    throw ContractError("census supports max_order <= 64");
  }
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  auto over_budget = [&] {
    return options.budget_seconds > 0 && elapsed() > options.budget_seconds;
  };

  CensusReport report;
  report.options = options;
  report.options.progress = nullptr;

  std::vector<AbelianGroup> groups;
  for (auto& g : enumerate_abelian_groups(options.max_order)) {
    if (g.order() > options.min_valency) groups.push_back(std::move(g));
  }
  std::vector<GroupTables> tables;
  for (const auto& g : groups) tables.emplace_back(g);

  // Orbit representatives under Aut(G), when pruning.
  std::vector<std::vector<Mask>> reps(groups.size());
  std::vector<WorkItem> work;
  constexpr Mask kChunk = Mask{1} << 16;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const std::size_t bits = static_cast<std::size_t>(groups[gi].order()) - 1;
    const Mask total = Mask{1} << bits;
    if (options.prune_automorphisms) {
      if (bits > 30) {
        throw ResourceError("automorphism pruning supports groups of order <= 31");
      }
      const auto autos = group_automorphisms(groups[gi]);
      std::vector<bool> seen(total, false);
      for (Mask m = 1; m < total; ++m) {
        if (seen[m]) continue;
        for (const auto& phi : autos) seen[image_mask(phi, m)] = true;
        if (std::popcount(m) >= options.min_valency) reps[gi].push_back(m);
      }
      for (std::size_t b = 0; b < reps[gi].size(); b += kChunk) {
        work.push_back({gi, b, std::min<Mask>(b + kChunk, reps[gi].size()),
                        &reps[gi]});
      }
    } else {
      for (Mask b = 1; b < total; b += kChunk) {
        work.push_back({gi, b, std::min(b + kChunk, total), nullptr});
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> searched{0};
  std::atomic<bool> stopped{false};
  std::mutex merge;
  std::vector<std::pair<std::size_t, Mask>> found;
  std::vector<std::uint64_t> per_group(groups.size(), 0);
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      std::vector<std::pair<std::size_t, Mask>> local;
      while (true) {
        const std::size_t w = next.fetch_add(1);
        if (w >= work.size()) break;
        if (over_budget()) {
          stopped = true;
          break;
        }
        const WorkItem& item = work[w];
        QuickFilter filter(tables[item.group]);
        std::uint64_t count = 0;
        for (Mask x = item.begin; x < item.end; ++x) {
          const Mask mask = item.list ? (*item.list)[x] : x;
          if (std::popcount(mask) < options.min_valency) continue;
          ++count;
          if (!filter.pass(mask)) continue;
          if (full_predicates(groups[item.group], mask)) {
            local.emplace_back(item.group, mask);
          }
        }
        searched += count;
        std::lock_guard lock(merge);
        per_group[item.group] += count;
      }
      std::lock_guard lock(merge);
      found.insert(found.end(), local.begin(), local.end());
    } catch (...) {
      std::lock_guard lock(merge);
      if (!failure) failure = std::current_exception();
      stopped = true;
    }
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  report.searched = searched;
  report.complete = !stopped;
  std::sort(found.begin(), found.end());

  if (options.progress) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto survivors = std::count_if(
          found.begin(), found.end(),
          [gi](const auto& f) { return f.first == gi; });
      *options.progress << "census: " << groups[gi].to_string() << " searched "
                        << per_group[gi] << " survivors " << survivors << '\n';
    }
  }

  // Deduplicate by canonical form.
  std::vector<CanonicalForm> forms(found.size());
  std::vector<Digraph> digraphs(found.size());
  {
    std::atomic<std::size_t> k{0};
    auto canon = [&] {
      for (std::size_t i; (i = k.fetch_add(1)) < found.size();) {
        const auto& [gi, mask] = found[i];
        digraphs[i] = from_cayley(groups[gi], subset_elements(groups[gi], mask));
        forms[i] = canonical_form(digraphs[i]);
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(canon);
  }
  std::map<CanonicalForm, std::size_t> class_of;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& [gi, mask] = found[i];
    CensusSurvivor s;
    s.group = groups[gi];
    s.connection_set = subset_elements(groups[gi], mask);
    auto [it, fresh] = class_of.try_emplace(forms[i], report.classes.size());
    if (fresh) {
      CensusClass c;
      c.form = forms[i];
      c.representative = i;
      report.classes.push_back(std::move(c));
    }
    s.class_id = it->second;
    ++report.classes[s.class_id].members;
    report.survivors.push_back(std::move(s));
  }
  report.dedup_classes = report.classes.size();

  // Match classes against family instances.
  const auto instances = enumerate_instances(options.max_order);
  report.family_instances = instances.size();
  std::vector<Digraph> family_digraphs;
  std::vector<CanonicalForm> family_forms;
  for (const auto& spec : instances) {
    family_digraphs.push_back(construct(spec).digraph);
    family_forms.push_back(canonical_form(family_digraphs.back()));
  }
  std::vector<std::optional<IsoCertificate>> class_cert(report.classes.size());
  std::vector<bool> covered(instances.size(), false);
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    auto& cls = report.classes[c];
    const Digraph& rep = digraphs[cls.representative];
    for (std::size_t f = 0; f < instances.size(); ++f) {
      auto cert = are_isomorphic(rep, family_digraphs[f]);
      const bool same_form = family_forms[f] == cls.form;
      if (cert.has_value() != same_form) {
        throw ConsistencyError("canonical form and isomorphism search disagree on " +
                               instances[f].to_string());
      }
      if (!cert) continue;
      cls.matches.push_back(instances[f]);
      covered[f] = true;
      if (!class_cert[c]) class_cert[c] = std::move(cert);
    }
  }
  for (std::size_t f = 0; f < instances.size(); ++f) {
    if (!covered[f]) report.uncovered.push_back(instances[f]);
  }

  // Per-survivor certificates: survivor -> representative via canonical
  // labellings, then representative -> family construction.
  for (std::size_t i = 0; i < report.survivors.size(); ++i) {
    auto& s = report.survivors[i];
    const auto& cls = report.classes[s.class_id];
    if (cls.matches.empty()) {
      report.unmatched.push_back(i);
      continue;
    }
    const auto& rep_label = forms[cls.representative].labelling;
    std::vector<Vertex> rep_of_index(rep_label.size());
    for (Vertex w = 0; w < rep_label.size(); ++w) rep_of_index[rep_label[w]] = w;
    const auto& to_family = class_cert[s.class_id]->mapping;
    IsoCertificate cert;
    cert.mapping.resize(rep_label.size());
    for (Vertex v = 0; v < rep_label.size(); ++v) {
      cert.mapping[v] = to_family[rep_of_index[forms[i].labelling[v]]];
    }
    const std::size_t f = static_cast<std::size_t>(
        std::find(instances.begin(), instances.end(), cls.matches.front()) -
        instances.begin());
    cert.verified =
        verify_isomorphism(digraphs[i], family_digraphs[f], cert.mapping);
    if (!cert.verified) {
      throw ConsistencyError("composed census certificate failed to verify");
    }
    s.match = cls.matches.front();
    s.certificate = std::move(cert);
  }
  report.seconds = elapsed();
  return report;
}

}  // namespace wdrd
