#include "wdrd/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <string>

#include "wdrd/errors.hpp"

namespace wdrd {

namespace {

std::int64_t reduce(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::int64_t integer() {
    skip_space();
    std::int64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, std::string(text_), pos_);
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

GroupElement scan_element(Scanner& in, const AbelianGroup& group) {
  std::vector<std::int64_t> coords;
  if (in.accept('(')) {
    coords.push_back(in.integer());
    while (in.accept(',')) coords.push_back(in.integer());
    in.expect(')');
  } else {
    coords.push_back(in.integer());
  }
  if (coords.size() != group.factor_count()) {
    in.fail("element has " + std::to_string(coords.size()) +
            " coordinates but group " + group.to_string() + " has " +
            std::to_string(group.factor_count()) + " factors");
  }
  return group.element(coords);
}

}  // namespace

bool GroupElement::is_identity() const noexcept {
  return std::all_of(coords.begin(), coords.end(),
                     [](std::int64_t c) { return c == 0; });
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)) {
  if (moduli_.empty()) {
    throw StructuralError("a group needs at least one cyclic factor");
  }
  for (std::int64_t m : moduli_) {
    if (m < 1) {
      throw StructuralError("cyclic factor order must be >= 1, got " +
                            std::to_string(m));
    }
    if (order_ > std::numeric_limits<std::int64_t>::max() / m) {
      throw StructuralError("group order overflows");
    }
    order_ *= m;
  }
}

GroupElement AbelianGroup::identity() const {
  return GroupElement{std::vector<std::int64_t>(moduli_.size(), 0)};
}

GroupElement AbelianGroup::element(std::span<const std::int64_t> coords) const {
  if (coords.size() != moduli_.size()) {
    throw StructuralError("element has " + std::to_string(coords.size()) +
                          " coordinates, group " + to_string() + " has " +
                          std::to_string(moduli_.size()) + " factors");
  }
  GroupElement g;
  g.coords.resize(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    g.coords[k] = reduce(coords[k], moduli_[k]);
  }
  return g;
}

GroupElement AbelianGroup::element(
    std::initializer_list<std::int64_t> coords) const {
  return element(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

void AbelianGroup::require_member(const GroupElement& g) const {
  if (g.coords.size() != moduli_.size()) {
    throw StructuralError("element has " + std::to_string(g.coords.size()) +
                          " coordinates, group " + to_string() + " has " +
                          std::to_string(moduli_.size()) + " factors");
  }
}

GroupElement AbelianGroup::add(const GroupElement& g,
                               const GroupElement& h) const {
  require_member(g);
  require_member(h);
  GroupElement sum;
  sum.coords.resize(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    sum.coords[k] = reduce(g.coords[k] + h.coords[k], moduli_[k]);
  }
  return sum;
}

GroupElement AbelianGroup::negate(const GroupElement& g) const {
  require_member(g);
  GroupElement neg;
  neg.coords.resize(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    neg.coords[k] = reduce(-g.coords[k], moduli_[k]);
  }
  return neg;
}

GroupElement AbelianGroup::subtract(const GroupElement& g,
                                    const GroupElement& h) const {
  return add(g, negate(h));
}

bool AbelianGroup::contains(const GroupElement& g) const noexcept {
  if (g.coords.size() != moduli_.size()) return false;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    if (g.coords[k] < 0 || g.coords[k] >= moduli_[k]) return false;
  }
  return true;
}

std::size_t AbelianGroup::rank_of(const GroupElement& g) const {
  if (!contains(g)) {
    throw StructuralError("element " + format_element(g) +
                          " is not a canonical member of " + to_string());
  }
  std::size_t rank = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    rank = rank * static_cast<std::size_t>(moduli_[k]) +
           static_cast<std::size_t>(g.coords[k]);
  }
  return rank;
}

GroupElement AbelianGroup::element_at(std::size_t rank) const {
  if (rank >= static_cast<std::size_t>(order_)) {
    throw StructuralError("rank " + std::to_string(rank) +
                          " out of range for " + to_string());
  }
  GroupElement g;
  g.coords.resize(moduli_.size());
  for (std::size_t k = moduli_.size(); k-- > 0;) {
    const auto m = static_cast<std::size_t>(moduli_[k]);
    g.coords[k] = static_cast<std::int64_t>(rank % m);
    rank /= m;
  }
  return g;
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> all;
  all.reserve(static_cast<std::size_t>(order_));
  for (std::size_t r = 0; r < static_cast<std::size_t>(order_); ++r) {
    all.push_back(element_at(r));
  }
  return all;
}

std::string AbelianGroup::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    if (k > 0) out += 'x';
    out += 'Z';
    out += std::to_string(moduli_[k]);
  }
  return out;
}

bool generates_group(std::span<const GroupElement> generators,
                     const AbelianGroup& group) {
  const auto n = static_cast<std::size_t>(group.order());
  std::vector<char> seen(n, 0);
  std::vector<GroupElement> frontier{group.identity()};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    GroupElement g = std::move(frontier.back());
    frontier.pop_back();
    for (const GroupElement& s : generators) {
      GroupElement next = group.add(g, s);
      const std::size_t r = group.rank_of(next);
      if (!seen[r]) {
        seen[r] = 1;
        ++reached;
        frontier.push_back(std::move(next));
      }
    }
  }
  return reached == n;
}

std::string format_element(const GroupElement& g) {
  if (g.coords.size() == 1) return std::to_string(g.coords[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < g.coords.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(g.coords[k]);
  }
  out += ')';
  return out;
}

std::string format_element_set(std::span<const GroupElement> elements) {
  std::string out = "{";
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k > 0) out += ',';
    out += format_element(elements[k]);
  }
  out += '}';
  return out;
}

AbelianGroup parse_group(std::string_view text) {
  Scanner in(text);
  std::vector<std::int64_t> moduli;
  do {
    const char c = in.peek();
    if (c != 'Z' && c != 'z') in.fail("expected 'Z'");
    in.accept(c);
    const std::size_t at = in.position();
    const std::int64_t m = in.integer();
    if (m < 1) throw ParseError("cyclic factor order must be >= 1",
                                std::string(text), at);
    moduli.push_back(m);
  } while (in.accept('x') || in.accept('X'));
  if (!in.done()) in.fail("unexpected trailing input");
  return AbelianGroup(std::move(moduli));
}

GroupElement parse_element(std::string_view text, const AbelianGroup& group) {
  Scanner in(text);
  GroupElement g = scan_element(in, group);
  if (!in.done()) in.fail("unexpected trailing input");
  return g;
}

std::vector<GroupElement> parse_element_set(std::string_view text,
                                            const AbelianGroup& group) {
  Scanner in(text);
  const bool braced = in.accept('{');
  std::vector<GroupElement> out;
  if (!(braced && in.peek() == '}') && !in.done()) {
    out.push_back(scan_element(in, group));
    while (in.accept(',')) out.push_back(scan_element(in, group));
  }
  if (braced) in.expect('}');
  if (!in.done()) in.fail("unexpected trailing input");
  return out;
}

}  // namespace wdrd
