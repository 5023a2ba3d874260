#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wdrd/families.hpp"
#include "wdrd/group.hpp"
#include "wdrd/iso.hpp"

namespace wdrd {

// One group per isomorphism class of each order up to max_order, in
// invariant-factor form (largest factor first, each factor divisible by the
// next), ordered by order and then by the factor list.
std::vector<AbelianGroup> enumerate_abelian_groups(std::int64_t max_order);

// All automorphisms of the group, each as a permutation of element ranks.
std::vector<std::vector<std::uint32_t>> group_automorphisms(
    const AbelianGroup& group);

struct CensusOptions {
  std::int64_t max_order = 24;
  int min_valency = 4;
  bool prune_automorphisms = false;
  // 0 disables the time budget.
  double budget_seconds = 0;
  // 0 uses the hardware concurrency.
  unsigned threads = 0;
  // Progress lines go here when set.
  std::ostream* progress = nullptr;
};

struct CensusSurvivor {
  AbelianGroup group{{1}};
  std::vector<GroupElement> connection_set;
  std::size_t class_id = 0;
  std::optional<FamilySpec> match;
  // Maps the survivor onto the construction of match.
  std::optional<IsoCertificate> certificate;
};

struct CensusClass {
  CanonicalForm form;
  std::size_t representative = 0;  // index into survivors
  std::size_t members = 0;
  // Every family instance isomorphic to this class, in enumeration order.
  std::vector<FamilySpec> matches;
};

struct CensusReport {
  CensusOptions options;
  std::uint64_t searched = 0;
  std::vector<CensusSurvivor> survivors;
  std::vector<CensusClass> classes;
  // Indices into survivors whose class matched no family instance.
  std::vector<std::size_t> unmatched;
  std::size_t dedup_classes = 0;
  // Family instances with at most max_order vertices and no matching class.
  std::vector<FamilySpec> uncovered;
  std::size_t family_instances = 0;
  bool complete = true;
  double seconds = 0;
};

// Exhaustive search over abelian Cayley digraphs. Survivors are strongly
// connected commutative quasi-thin WDRDs of valency > 3 with at least
// min_valency arcs per vertex. Throws ContractError if max_order < 8.
CensusReport run_census(const CensusOptions& options);

// Scope statement carried by every report.
inline constexpr const char* kCensusScope =
    "partial check: abelian Cayley digraphs only";

}  // namespace wdrd
