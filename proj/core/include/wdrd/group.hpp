#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wdrd {

// Element of a product of cyclic groups. Coordinates are canonical residues
// (minimum nonnegative representatives); only AbelianGroup creates them.
struct GroupElement {
  std::vector<std::int64_t> coords;

  bool is_identity() const noexcept;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// Finite abelian group presented as Z_{n1} x ... x Z_{nk}, factor order kept
// as given.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t factor_count() const noexcept { return moduli_.size(); }
  std::int64_t order() const noexcept { return order_; }

  GroupElement identity() const;
  // Reduces arbitrary integer coordinates (negative allowed).
  GroupElement element(std::span<const std::int64_t> coords) const;
  GroupElement element(std::initializer_list<std::int64_t> coords) const;

  GroupElement add(const GroupElement& g, const GroupElement& h) const;
  GroupElement negate(const GroupElement& g) const;
  GroupElement subtract(const GroupElement& g, const GroupElement& h) const;

  bool contains(const GroupElement& g) const noexcept;

  // Lexicographic rank of the coordinate vector; the first factor is the
  // most significant digit.
  std::size_t rank_of(const GroupElement& g) const;
  GroupElement element_at(std::size_t rank) const;
  std::vector<GroupElement> elements() const;

  // "Z8", "Z6xZ3"
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  void require_member(const GroupElement& g) const;

  std::vector<std::int64_t> moduli_;
  std::int64_t order_ = 1;
};

// True iff the subgroup generated by S is all of G.
bool generates_group(std::span<const GroupElement> generators,
                     const AbelianGroup& group);

// Canonical text form: "3" for one factor, "(5,2)" otherwise.
std::string format_element(const GroupElement& g);
std::string format_element_set(std::span<const GroupElement> elements);

AbelianGroup parse_group(std::string_view text);
GroupElement parse_element(std::string_view text, const AbelianGroup& group);
// Comma separated elements, optionally wrapped in braces:
// "1,2,3,6", "{(0,1),(1,0),(0,-1)}".
std::vector<GroupElement> parse_element_set(std::string_view text,
                                            const AbelianGroup& group);

}  // namespace wdrd
