#include "wdrd/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>

#include "wdrd/errors.hpp"

namespace wdrd {

namespace {

constexpr std::array<std::string_view, 10> kNames = {
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};

bool uses_p(Family f) { return f == Family::II; }
bool uses_q(Family f) {
  return f != Family::I && f != Family::II && f != Family::III;
}
bool uses_n(Family f) {
  return f == Family::VIII || f == Family::IX || f == Family::X;
}
bool uses_i(Family f) {
  return f == Family::II || f == Family::IV || f == Family::VI ||
         f == Family::VII;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

// ⌈a/2⌉ for any integer a.
std::int64_t ceil_half(std::int64_t a) { return -floor_div(-a, 2); }

// a/2 for an a that must be even.
std::int64_t half(std::int64_t a) {
  if (a % 2 != 0) {
    throw ConsistencyError("odd numerator " + std::to_string(a) +
                           " in an exact halving");
  }
  return a / 2;
}

std::int64_t upper_n(std::int64_t q) { return q - (q % 2 == 0 ? 1 : 0); }

}  // namespace

std::string family_name(Family f) {
  return std::string(kNames[static_cast<std::size_t>(f)]);
}

Family parse_family_name(std::string_view text) {
  std::string lower;
  for (char ch : text) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == lower) return static_cast<Family>(k);
  }
  throw StructuralError("unknown family id '" + std::string(text) + "'");
}

std::int64_t FamilySpec::c() const {
  const std::int64_t g = std::gcd(q, n);
  return g == 0 ? 0 : n / g;
}

std::int64_t FamilySpec::t() const {
  const std::int64_t g = std::gcd(q, n);
  return g == 0 ? 0 : q / g;
}

std::int64_t FamilySpec::order() const {
  switch (family) {
    case Family::I:
    case Family::III:
      return family == Family::I ? 8 : 16;
    case Family::II:
      return 4 * p;
    case Family::IV:
    case Family::V:
      return 4 * q;
    case Family::VI:
    case Family::VII:
      return 8 * q;
    default:
      return 2 * q * n;
  }
}

std::string FamilySpec::to_string() const {
  std::vector<std::string> parts;
  if (uses_p(family)) parts.push_back("p=" + std::to_string(p));
  if (uses_q(family)) parts.push_back("q=" + std::to_string(q));
  if (uses_n(family)) parts.push_back("n=" + std::to_string(n));
  if (uses_i(family)) parts.push_back("i=" + std::to_string(i_flag));
  std::string out = family_name(family);
  if (parts.empty()) return out;
  out += '(';
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += ',';
    out += parts[k];
  }
  return out + ')';
}

Validation validate(const FamilySpec& s) {
  Validation v;
  auto require = [&](bool ok, const std::string& text) {
    if (!ok) {
      v.ok = false;
      v.violations.push_back(text);
    }
  };
  const Family f = s.family;
  if (static_cast<int>(f) < 0 || static_cast<int>(f) > 9) {
    throw StructuralError("unknown family id");
  }
  require(uses_p(f) || s.p == 0, "p unused");
  require(uses_q(f) || s.q == 0, "q unused");
  require(uses_n(f) || s.n == 0, "n unused");
  if (uses_i(f)) {
    require(s.i_flag == 0 || s.i_flag == 1, "i∈{0,1}");
  } else {
    require(s.i_flag == 0, "i unused");
  }

  switch (f) {
    case Family::II:
      require(s.p >= 2, "p≥2");
      require(s.p != 2 - s.i_flag, "p≠2−i");
      break;
    case Family::IV:
      require(s.q >= 3, "q≥3");
      require(s.q != 3 + s.i_flag, "q≠3+i");
      break;
    case Family::V:
      require(s.q >= 3, "q≥3");
      break;
    case Family::VI:
    case Family::VII:
      require(s.q >= 3, "q≥3");
      require(s.q != 3 && s.q != 3 + s.i_flag, "q∉{3,3+i}");
      break;
    case Family::VIII:
    case Family::IX:
    case Family::X:
      require(s.q >= 3, "q≥3");
      require(s.n >= 3, "n≥3");
      require(s.n <= upper_n(s.q), "n≤q−(1+(−1)^q)/2");
      if (f == Family::IX && s.n > 0) require(s.c() % 2 == 1, "c odd");
      if (f == Family::X && s.q > 0) require(s.t() % 2 == 1, "t odd");
      break;
    default:
      break;
  }
  return v;
}

CayleyInstance construct(const FamilySpec& s) {
  if (Validation v = validate(s); !v.ok) {
    throw ValidationError(std::move(v.violations));
  }
  using Coords = std::vector<std::int64_t>;
  std::vector<std::int64_t> moduli;
  std::vector<Coords> raw;
  const std::int64_t q = s.q;
  const std::int64_t n = s.n;
  const std::int64_t i = s.i_flag;
  switch (s.family) {
    case Family::I:
      moduli = {8};
      raw = {{1}, {2}, {3}, {6}};
      break;
    case Family::II:
      moduli = {4 * s.p};
      raw = {{1}, {2}, {2 * s.p + i}, {2 * s.p + 1}, {2 * s.p + 2}};
      break;
    case Family::III:
      moduli = {4, 4};
      raw = {{0, 1}, {1, 0}, {2, 0}, {0, 2}};
      break;
    case Family::IV:
      moduli = {q, 4};
      raw = {{0, 1}, {1, 0}, {1, 2}, {0, 2 + i}};
      break;
    case Family::V:
      moduli = {2 * q, 2};
      raw = {{0, 1}, {1, 0}, {2, 0}, {1, 1}};
      break;
    case Family::VI:
      moduli = {4 * q, 2};
      raw = {{0, 1},         {1, 0},         {2, 0},
             {2 * q + 1, 0}, {2 * q + 2, 0}, {2 * q * i, 1}};
      break;
    case Family::VII:
      moduli = {2 * q, 4};
      raw = {{0, 1}, {1, 0}, {1, 2}, {0, 2 - i}, {2, 0}, {2, 2}};
      break;
    case Family::VIII:
      moduli = {2 * q, n};
      raw = {{0, 1}, {1, 0}, {2, 0}, {0, -1}};
      break;
    case Family::IX: {
      const std::int64_t c = s.c();
      moduli = {2 * q, n};
      raw = {{0, 1}, {1, half(c + 1)}, {1, half(c - 1)}, {2, c}, {0, -1}};
      break;
    }
    case Family::X: {
      const std::int64_t t = s.t();
      moduli = {2 * n, q};
      raw = {{0, 1}, {1, half(t + 1)}, {-1, half(1 - t)}, {2, t}, {-2, -t}};
      break;
    }
  }
  AbelianGroup group(moduli);
  std::vector<GroupElement> set;
  for (const Coords& c : raw) set.push_back(group.element(c));
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  Digraph digraph = from_cayley(group, set);
  return {std::move(group), std::move(set), std::move(digraph)};
}

TwoWayDistance table1_distance(const FamilySpec& s, const GroupElement& g) {
  if (s.family == Family::I || s.family == Family::II ||
      s.family == Family::III) {
    throw UnsupportedFamilyError("no closed-form distances for family " +
                                 family_name(s.family));
  }
  if (Validation v = validate(s); !v.ok) {
    throw ValidationError(std::move(v.violations));
  }
  const std::int64_t q = s.q;
  const std::int64_t n = s.n;
  const std::int64_t i = s.i_flag;
  std::vector<std::int64_t> moduli;
  switch (s.family) {
    case Family::IV:
      moduli = {q, 4};
      break;
    case Family::V:
      moduli = {2 * q, 2};
      break;
    case Family::VI:
      moduli = {4 * q, 2};
      break;
    case Family::VII:
      moduli = {2 * q, 4};
      break;
    case Family::X:
      moduli = {2 * n, q};
      break;
    default:
      moduli = {2 * q, n};
      break;
  }
  const AbelianGroup group(moduli);
  if (!group.contains(g)) {
    throw StructuralError(format_element(g) + " is not an element of " +
                          group.to_string());
  }
  if (g.is_identity()) throw DomainError("identity has two-way distance (0,0)");
  const std::int64_t a = g.coords[0];
  const std::int64_t b = g.coords[1];

  using Value = std::function<std::pair<std::int64_t, std::int64_t>()>;
  std::vector<std::pair<bool, Value>> rows;
  switch (s.family) {
    case Family::IV: {
      const std::int64_t sign = b % 2 == 0 ? 1 : -1;
      rows.emplace_back(a != 0, [&] {
        return std::pair{beta(b) + a, q + beta(b) - a};
      });
      rows.emplace_back(a == 0, [&, sign] {
        return std::pair{ceil_half(b) + sign * ceil_half(b - 1) * i,
                         ceil_half(4 - b) + sign * ceil_half(3 - b) * i};
      });
      break;
    }
    case Family::V:
      rows.emplace_back(a % 2 == 1, [&] {
        return std::pair{half(a + 1), q - half(a - 1)};
      });
      rows.emplace_back(a == 0 && b == 1, [] { return std::pair{1LL, 1LL}; });
      rows.emplace_back(a % 2 == 0 && !(a == 0 && b == 1), [&] {
        return std::pair{b + half(a), q + b - half(a)};
      });
      break;
    case Family::VI:
      rows.emplace_back(a == 0 && b == 1, [] { return std::pair{1LL, 1LL}; });
      rows.emplace_back(0 < a && a < 2 * q, [&] {
        return std::pair{half(a + 2 * b + beta(a)),
                         q - half(a - 2 * b - beta(a))};
      });
      rows.emplace_back(a > 2 * q, [&] {
        return std::pair{half(a + 2 * b + beta(a)) - q,
                         2 * q - half(a - 2 * b - beta(a))};
      });
      rows.emplace_back(a == 2 * q, [&] {
        const std::int64_t v =
            (i == 0 ? q : 1) + b + (b % 2 == 0 ? 1 : -1) * i;
        return std::pair{v, v};
      });
      break;
    case Family::VII:
      rows.emplace_back(a != 0, [&] {
        return std::pair{beta(b) + half(a + beta(a)),
                         q + beta(b) - half(a - beta(a))};
      });
      rows.emplace_back(a == 0, [&] {
        return std::pair{ceil_half(b) + ceil_half(b - 1) * i,
                         ceil_half(4 - b) + ceil_half(3 - b) * i};
      });
      break;
    case Family::VIII:
      rows.emplace_back(a == 0 && 2 * b <= n, [&] { return std::pair{b, b}; });
      rows.emplace_back(a == 0 && 2 * b > n,
                        [&] { return std::pair{n - b, n - b}; });
      rows.emplace_back(a != 0 && 2 * b <= n, [&] {
        return std::pair{b + half(a + beta(a)), b + q - half(a - beta(a))};
      });
      rows.emplace_back(a != 0 && 2 * b > n, [&] {
        return std::pair{n - b + half(a + beta(a)),
                         n - b + q - half(a - beta(a))};
      });
      break;
    case Family::IX: {
      const std::int64_t v = mod(b - half(a * s.c() + beta(a)), n);
      rows.emplace_back(a == 0 && 2 * v <= n, [=] { return std::pair{v, v}; });
      rows.emplace_back(a == 0 && 2 * v > n,
                        [=] { return std::pair{n - v, n - v}; });
      rows.emplace_back(a != 0 && 2 * v <= n - beta(a), [=] {
        return std::pair{v + half(a + beta(a)), v + q - half(a - beta(a))};
      });
      rows.emplace_back(a != 0 && 2 * v > n - beta(a), [=] {
        return std::pair{n - v + half(a - beta(a)),
                         n - v + q - half(a + beta(a))};
      });
      break;
    }
    case Family::X: {
      const std::int64_t t = s.t();
      const std::int64_t va = half(a - beta(a));
      const std::int64_t u = mod(2 * b - beta(a) * t - 2 * t * va, 2 * q);
      rows.emplace_back(u == 0 && 2 * va <= n,
                        [=] { return std::pair{va, va}; });
      rows.emplace_back(u == 0 && 2 * va > n,
                        [=] { return std::pair{n - va, n - va}; });
      rows.emplace_back(u != 0 && 2 * va <= n - beta(u), [=] {
        return std::pair{va + half(u + beta(u)), va + q - half(u - beta(u))};
      });
      rows.emplace_back(u != 0 && 2 * va > n - beta(u), [=] {
        return std::pair{n - va + half(u - beta(u)),
                         n - va + q - half(u + beta(u))};
      });
      break;
    }
    default:
      break;
  }

  std::optional<std::pair<std::int64_t, std::int64_t>> value;
  int matched = 0;
  for (const auto& [applies, row] : rows) {
    if (!applies) continue;
    ++matched;
    value = row();
  }
  if (matched != 1) {
    throw ConsistencyError(std::to_string(matched) + " rows apply to " +
                           format_element(g) + " in " + s.to_string());
  }
  return {static_cast<std::int32_t>(value->first),
          static_cast<std::int32_t>(value->second)};
}

std::vector<FamilySpec> enumerate_instances(std::int64_t max_vertices) {
  std::vector<FamilySpec> out;
  auto keep = [&](FamilySpec s) {
    if (s.order() <= max_vertices && validate(s).ok) out.push_back(s);
  };
  keep({Family::I});
  for (std::int64_t p = 2; 4 * p <= max_vertices; ++p) {
    for (int i = 0; i <= 1; ++i) keep({Family::II, i, p});
  }
  keep({Family::III});
  for (std::int64_t q = 3; 4 * q <= max_vertices; ++q) {
    for (int i = 0; i <= 1; ++i) keep({Family::IV, i, 0, q});
  }
  for (std::int64_t q = 3; 4 * q <= max_vertices; ++q) {
    keep({Family::V, 0, 0, q});
  }
  for (Family f : {Family::VI, Family::VII}) {
    for (std::int64_t q = 3; 8 * q <= max_vertices; ++q) {
      for (int i = 0; i <= 1; ++i) keep({f, i, 0, q});
    }
  }
  for (Family f : {Family::VIII, Family::IX, Family::X}) {
    for (std::int64_t q = 3; 6 * q <= max_vertices; ++q) {
      for (std::int64_t n = 3; n <= upper_n(q) && 2 * q * n <= max_vertices;
           ++n) {
        keep({f, 0, 0, q, n});
      }
    }
  }
  return out;
}

FamilySpec parse_family_spec(std::string_view text) {
  const std::string input(text);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  skip();
  const std::size_t name_start = pos;
  while (pos < text.size() &&
         std::isalpha(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  FamilySpec spec;
  try {
    spec.family = parse_family_name(text.substr(name_start, pos - name_start));
  } catch (const StructuralError&) {
    throw ParseError("unknown family id", input, name_start);
  }
  bool seen_p = false, seen_q = false, seen_n = false, seen_i = false;
  skip();
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    skip();
    while (true) {
      if (pos >= text.size()) throw ParseError("expected parameter", input, pos);
      const std::size_t key_pos = pos;
      const char key = static_cast<char>(
          std::tolower(static_cast<unsigned char>(text[pos])));
      ++pos;
      skip();
      if (pos >= text.size() || text[pos] != '=') {
        throw ParseError("expected '='", input, pos);
      }
      ++pos;
      skip();
      const std::size_t num_pos = pos;
      bool negative = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
      }
      std::int64_t value = 0;
      bool digits = false;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > (std::int64_t{1} << 40)) {
          throw ParseError("number too large", input, num_pos);
        }
        digits = true;
        ++pos;
      }
      if (!digits) throw ParseError("expected integer", input, num_pos);
      if (negative) value = -value;
      bool* seen = nullptr;
      bool allowed = false;
      switch (key) {
        case 'p':
          seen = &seen_p;
          allowed = uses_p(spec.family);
          spec.p = value;
          break;
        case 'q':
          seen = &seen_q;
          allowed = uses_q(spec.family);
          spec.q = value;
          break;
        case 'n':
          seen = &seen_n;
          allowed = uses_n(spec.family);
          spec.n = value;
          break;
        case 'i':
          seen = &seen_i;
          allowed = uses_i(spec.family);
          spec.i_flag = static_cast<int>(value);
          break;
        default:
          throw ParseError("unknown parameter", input, key_pos);
      }
      if (!allowed) {
        throw ParseError(std::string("parameter ") + key + " not used by " +
                             family_name(spec.family),
                         input, key_pos);
      }
      if (*seen) throw ParseError("repeated parameter", input, key_pos);
      *seen = true;
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip();
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ')'", input, pos);
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters", input, pos);
  auto need = [&](bool used, bool seen, const char* name) {
    if (used && !seen) {
      throw ParseError(std::string("missing parameter ") + name, input,
                       text.size());
    }
  };
  need(uses_p(spec.family), seen_p, "p");
  need(uses_q(spec.family), seen_q, "q");
  need(uses_n(spec.family), seen_n, "n");
  need(uses_i(spec.family), seen_i, "i");
  return spec;
}

}  // namespace wdrd
