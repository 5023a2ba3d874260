#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wdrd/arcs.hpp"
#include "wdrd/census.hpp"
#include "wdrd/errors.hpp"
#include "wdrd/families.hpp"
#include "wdrd/iso.hpp"
#include "wdrd/json_io.hpp"
#include "wdrd/scheme.hpp"

namespace {

using namespace wdrd;

struct Loaded {
  Digraph digraph;
  std::optional<FamilySpec> spec;
  std::string source;
};

Loaded load_token(const std::string& token) {
  if (!token.empty() && token.front() == '@') {
    std::ifstream in(token.substr(1));
    if (!in) throw StructuralError("cannot open " + token.substr(1));
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), token, 0);
    }
    return {digraph_from_json(j), std::nullopt, token};
  }
  if (const auto colon = token.find(':'); colon != std::string::npos) {
    const AbelianGroup g = parse_group(token.substr(0, colon));
    const auto set = parse_element_set(token.substr(colon + 1), g);
    return {from_cayley(g, set), std::nullopt, token};
  }
  const FamilySpec spec = parse_family_spec(token);
  return {construct(spec).digraph, spec, spec.to_string()};
}

// Positional inputs: one family spec or "G:S" token, or a group and a set.
Loaded load(const std::vector<std::string>& args, const std::string& in_path) {
  if (!in_path.empty()) {
    if (!args.empty()) throw StructuralError("give either --in or a positional input");
    return load_token("@" + in_path);
  }
  if (args.size() == 1) return load_token(args[0]);
  if (args.size() == 2) return load_token(args[0] + ":" + args[1]);
  throw StructuralError("expected a family spec, GROUP SET, or --in FILE");
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void emit_digraph(const Digraph& d, bool dot, Json extra = Json::object()) {
  if (dot) {
    std::cout << export_dot(d);
    return;
  }
  Json j = to_json(d);
  for (auto& [k, v] : extra.items()) j[k] = v;
  emit(j);
}

int cmd_verify(const Loaded& in) {
  const Digraph& d = in.digraph;
  Json out;
  out["strongly_connected"] = is_strongly_connected(d);
  if (!out["strongly_connected"]) {
    emit(out);
    return 0;
  }
  const DistanceTable t = distance_table(d);
  const RelationPartition r = compute_relations(d, t);
  const WdrdVerdict v = check_wdrd(r);
  out["wdrd"] = to_json(v, r);
  Json k = Json::array();
  for (const auto& [u, w] : d.arcs()) {
    const Json type = {1, t(w, u)};
    if (std::find(k.begin(), k.end(), type) == k.end()) k.push_back(type);
  }
  std::sort(k.begin(), k.end());
  out["K"] = k;
  if (!v.is_wdrd) {
    emit(out);
    return 0;
  }
  const IntersectionTensor p = intersection_tensor(r);
  const bool commutative = is_commutative(p);
  const bool quasi_thin = is_quasi_thin(p);
  out["commutative"] = commutative;
  out["max_intersection_number"] = max_intersection_number(p);
  out["quasi_thin"] = quasi_thin;
  out["thin"] = is_thin(p);
  out["valency"] = p.valency();
  out["lemma1"] = to_json(check_lemma1(p));

  bool mismatch = false;
  Json purity = Json::object();
  for (const auto& entry : arc_type_profile(d, t).types) {
    const int q = entry.back_distance + 1;
    Json e = {{"definitional", entry.pure ? "pure" : "mixed"}};
    if (q >= 3 && commutative && quasi_thin) {
      const bool mixed = is_mixed_via_tensor(p, q);
      e["tensor"] = mixed ? "mixed" : "pure";
      e["agree"] = mixed != entry.pure;
      mismatch = mismatch || mixed == entry.pure;
    }
    purity["(1," + std::to_string(entry.back_distance) + ")"] = std::move(e);
  }
  out["purity"] = std::move(purity);
  emit(out);
  return mismatch ? 1 : 0;
}

int cmd_table1(const std::string& text) {
  const FamilySpec spec = parse_family_spec(text);
  const CayleyInstance inst = construct(spec);
  if (spec.family == Family::I || spec.family == Family::II ||
      spec.family == Family::III) {
    throw UnsupportedFamilyError("no closed-form distances for family " +
                                 family_name(spec.family));
  }
  const DistanceTable t = distance_table(inst.digraph);
  Json rows = Json::array();
  bool all_equal = true;
  for (const auto& g : inst.group.elements()) {
    if (g.is_identity()) continue;
    const TwoWayDistance formula = table1_distance(spec, g);
    const TwoWayDistance bfs = two_way(t, 0, static_cast<Vertex>(inst.group.rank_of(g)));
    const bool equal = formula == bfs;
    all_equal = all_equal && equal;
    rows.push_back({{"element", format_element(g)},
                    {"formula", {formula.forward, formula.backward}},
                    {"bfs", {bfs.forward, bfs.backward}},
                    {"equal", equal}});
  }
  emit({{"spec", spec.to_string()}, {"rows", rows}, {"all_equal", all_equal}});
  return all_equal ? 0 : 1;
}

std::vector<RelationIndex> parse_relations(const std::vector<std::string>& texts,
                                           const IntersectionTensor& p) {
  std::vector<RelationIndex> out;
  for (const auto& text : texts) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream in(text.front() == '(' ? text.substr(1) : text);
    if (!(in >> a >> comma >> b) || comma != ',') {
      throw ParseError("expected a relation like 1,1", text, 0);
    }
    out.push_back(p.index_of({a, b}));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly distance-regular digraph toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string in_path;
  bool dot = false;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", inputs,
                    "family spec (\"ix(q=9,n=3)\"), \"Z8:1,2,3,6\", or GROUP SET");
    sub->add_option("--in", in_path, "digraph JSON file");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_flag("--dot", dot, "Graphviz output");
    sub->add_flag_function("--json", [&](std::int64_t) { dot = false; }, "JSON output (default)");
  };

  auto* construct_cmd = app.add_subcommand("construct", "build a digraph");
  add_input(construct_cmd);
  add_format(construct_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check the WDRD predicates");
  add_input(verify_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "match K against cases C1-C6");
  add_input(classify_cmd);

  CensusOptions census_opts;
  auto* census_cmd = app.add_subcommand("census", "exhaustive abelian Cayley search");
  census_cmd->add_option("--max-order", census_opts.max_order)->check(CLI::Range(8, 40));
  census_cmd->add_option("--min-valency", census_opts.min_valency)->check(CLI::NonNegativeNumber);
  census_cmd->add_flag("--prune-automorphisms", census_opts.prune_automorphisms);
  census_cmd->add_option("--budget-seconds", census_opts.budget_seconds)->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--threads", census_opts.threads);

  std::string table_spec;
  auto* table_cmd = app.add_subcommand("table1", "compare closed-form distances with BFS");
  table_cmd->add_option("spec", table_spec)->required();

  Vertex vertex = 0;
  std::vector<int> qs;
  auto* delta_cmd = app.add_subcommand("delta", "extract a Δ component");
  add_input(delta_cmd);
  add_format(delta_cmd);
  delta_cmd->add_option("--vertex", vertex);
  delta_cmd->add_option("--q", qs, "q values; arcs of type (1,q-1) are kept")
      ->required()
      ->delimiter(',');

  std::vector<std::string> generators;
  auto* quotient_cmd = app.add_subcommand("quotient", "quotient over a closed subset");
  add_input(quotient_cmd);
  add_format(quotient_cmd);
  quotient_cmd->add_option("--relation", generators, "generating relation, e.g. 1,1")
      ->required();

  std::string first, second;
  auto* iso_cmd = app.add_subcommand("iso", "isomorphism test with certificate");
  iso_cmd->add_option("first", first)->required();
  iso_cmd->add_option("second", second)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct_cmd->parsed()) {
      const Loaded in = load(inputs, in_path);
      emit_digraph(in.digraph, dot);
      return 0;
    }
    if (verify_cmd->parsed()) return cmd_verify(load(inputs, in_path));
    if (classify_cmd->parsed()) {
      const Loaded in = load(inputs, in_path);
      const DistanceTable t = distance_table(in.digraph);
      const IntersectionTensor p = intersection_tensor(compute_relations(in.digraph, t));
      emit(to_json(classify_case(in.digraph, t, p)));
      return 0;
    }
    if (census_cmd->parsed()) {
      census_opts.progress = &std::cerr;
      const CensusReport report = run_census(census_opts);
      emit(to_json(report));
      if (!report.complete) return 3;
      return report.unmatched.empty() && report.uncovered.empty() ? 0 : 1;
    }
    if (table_cmd->parsed()) return cmd_table1(table_spec);
    if (delta_cmd->parsed()) {
      const Loaded in = load(inputs, in_path);
      const DistanceTable t = distance_table(in.digraph);
      const Subdigraph sub = delta_component(in.digraph, t, vertex, qs);
      emit_digraph(sub.digraph, dot, {{"original", sub.original}});
      return 0;
    }
    if (quotient_cmd->parsed()) {
      const Loaded in = load(inputs, in_path);
      const DistanceTable t = distance_table(in.digraph);
      const RelationPartition r = compute_relations(in.digraph, t);
      const IntersectionTensor p = intersection_tensor(r);
      const ClosedSubset f = closed_subset(p, parse_relations(generators, p));
      const Quotient qd = quotient(in.digraph, r, p, f);
      emit_digraph(qd.digraph, dot, {{"blocks", qd.blocks}});
      return 0;
    }
    if (iso_cmd->parsed()) {
      const Loaded a = load_token(first);
      const Loaded b = load_token(second);
      const auto cert = are_isomorphic(a.digraph, b.digraph);
      emit({{"isomorphic", cert.has_value()},
            {"certificate", cert ? to_json(*cert) : Json(nullptr)}});
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid family parameters:";
    for (const auto& v : e.violations()) std::cerr << ' ' << v;
    std::cerr << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.position()
              << " in \"" << e.input() << "\"\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
