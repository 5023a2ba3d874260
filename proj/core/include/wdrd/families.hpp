#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wdrd/digraph.hpp"
#include "wdrd/group.hpp"

namespace wdrd {

enum class Family { I, II, III, IV, V, VI, VII, VIII, IX, X };

// "i" .. "x"
std::string family_name(Family f);
Family parse_family_name(std::string_view text);

// Parameters of one Cayley family. Fields a family does not use stay 0.
struct FamilySpec {
  Family family = Family::I;
  int i_flag = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t n = 0;

  // n / gcd(q,n) and q / gcd(q,n); meaningful for (ix) and (x).
  std::int64_t c() const;
  std::int64_t t() const;
  // Order of the constructed group.
  std::int64_t order() const;

  // "ix(q=9,n=3)", "ii(p=3,i=0)", "i"
  std::string to_string() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct Validation {
  bool ok = true;
  std::vector<std::string> violations;
};

Validation validate(const FamilySpec& spec);

struct CayleyInstance {
  AbelianGroup group;
  std::vector<GroupElement> connection_set;  // sorted, duplicates collapsed
  Digraph digraph;
};

// Throws ValidationError listing every violated constraint.
CayleyInstance construct(const FamilySpec& spec);

// β(x) = 1 for odd x, 0 for even x.
constexpr std::int64_t beta(std::int64_t x) { return x % 2 == 0 ? 0 : 1; }

// Closed-form ∂̃(0, g) for families (iv)-(x). Throws UnsupportedFamilyError
// for (i)-(iii), DomainError for the identity, ValidationError for an invalid
// spec and ConsistencyError unless exactly one row applies.
TwoWayDistance table1_distance(const FamilySpec& spec, const GroupElement& g);

// Every valid spec whose group has at most max_vertices elements, ordered by
// family, then by the parameters.
std::vector<FamilySpec> enumerate_instances(std::int64_t max_vertices);

FamilySpec parse_family_spec(std::string_view text);

}  // namespace wdrd
