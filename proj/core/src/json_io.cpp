#include "wdrd/json_io.hpp"

#include "wdrd/errors.hpp"

namespace wdrd {

namespace {

Json pair_json(const TwoWayDistance& t) { return Json::array({t.forward, t.backward}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'", j.dump(), 0);
  }
  return j.at(key);
}

}  // namespace

Json to_json(const Digraph& digraph) {
  Json arcs = Json::array();
  for (const auto& [u, v] : digraph.arcs()) arcs.push_back({u, v});
  Json j;
  j["n"] = digraph.vertex_count();
  j["arcs"] = std::move(arcs);
  j["labels"] = digraph.labels();
  return j;
}

Digraph digraph_from_json(const Json& j) {
  try {
    const auto n = field(j, "n").get<std::int64_t>();
    if (n < 0) throw ParseError("negative vertex count", j.dump(), 0);
    std::vector<Arc> arcs;
    for (const auto& a : field(j, "arcs")) {
      if (!a.is_array() || a.size() != 2) {
        throw ParseError("arc must be a pair", a.dump(), 0);
      }
      const auto u = a[0].get<std::int64_t>();
      const auto v = a[1].get<std::int64_t>();
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw StructuralError("arc " + a.dump() + " out of range");
      }
      arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n)) {
      throw ParseError("label count differs from n", j.dump(), 0);
    }
    return Digraph::from_arcs(static_cast<std::size_t>(n), arcs, std::move(labels));
  } catch (const Json::exception& e) {
    throw ParseError(e.what(), j.dump(), 0);
  }
}

Json to_json(const IntersectionTensor& tensor) {
  Json relations = Json::array();
  for (const auto& t : tensor.types()) relations.push_back(pair_json(t));
  Json p = Json::array();
  const auto r = static_cast<RelationIndex>(tensor.relation_count());
  for (RelationIndex h = 0; h < r; ++h) {
    for (RelationIndex i = 0; i < r; ++i) {
      for (RelationIndex k = 0; k < r; ++k) {
        if (const auto v = tensor(h, i, k); v != 0) p.push_back({h, i, k, v});
      }
    }
  }
  Json j;
  j["relations"] = std::move(relations);
  j["valencies"] = tensor.valencies();
  j["p"] = std::move(p);
  return j;
}

Json to_json(const CaseVerdict& verdict) {
  Json k = Json::array();
  for (auto r : verdict.k_set) k.push_back({1, r});
  Json j;
  j["case"] = verdict.case_id;
  j["q"] = verdict.q;
  j["K"] = std::move(k);
  j["facts"] = verdict.facts;
  return j;
}

Json to_json(const IsoCertificate& certificate) {
  return {{"mapping", certificate.mapping}, {"verified", certificate.verified}};
}

Json to_json(const FamilySpec& spec) {
  Json j;
  j["family"] = family_name(spec.family);
  j["spec"] = spec.to_string();
  const std::string text = spec.to_string();
  if (text.find("p=") != std::string::npos) j["p"] = spec.p;
  if (text.find("q=") != std::string::npos) j["q"] = spec.q;
  if (text.find("n=") != std::string::npos) j["n"] = spec.n;
  if (text.find("i=") != std::string::npos) j["i"] = spec.i_flag;
  return j;
}

FamilySpec family_spec_from_json(const Json& j) {
  try {
    FamilySpec spec;
    try {
      spec.family = parse_family_name(field(j, "family").get<std::string>());
    } catch (const StructuralError& e) {
      throw ParseError(e.what(), j.dump(), 0);
    }
    spec.p = j.value("p", std::int64_t{0});
    spec.q = j.value("q", std::int64_t{0});
    spec.n = j.value("n", std::int64_t{0});
    spec.i_flag = j.value("i", 0);
    return spec;
  } catch (const Json::exception& e) {
    throw ParseError(e.what(), j.dump(), 0);
  }
}

Json to_json(const WdrdVerdict& verdict, const RelationPartition& relations) {
  Json j;
  j["is_wdrd"] = verdict.is_wdrd;
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    j["witness"] = {
        {"h", pair_json(relations.type(w.h))},
        {"i", pair_json(relations.type(w.i))},
        {"j", pair_json(relations.type(w.j))},
        {"first", {w.first.first, w.first.second}},
        {"second", {w.second.first, w.second.second}},
        {"first_count", w.first_count},
        {"second_count", w.second_count},
        {"text", w.describe(relations)},
    };
  }
  return j;
}

Json to_json(const Lemma1Report& report) {
  static constexpr const char* kNames[] = {"i", "ii", "iii", "iv", "v", "vi"};
  Json j;
  for (std::size_t k = 0; k < report.identities.size(); ++k) {
    const auto& c = report.identities[k];
    Json e = {{"passed", c.passed}, {"checked", c.checked}};
    if (!c.passed) {
      e["witness"] = c.witness;
      e["detail"] = c.detail;
    }
    j[kNames[k]] = std::move(e);
  }
  j["all_passed"] = report.all_passed();
  return j;
}

Json to_json(const PurityResult& result) {
  Json j;
  j["pure"] = result.pure;
  j["paths_examined"] = result.paths_examined;
  if (!result.pure) {
    Json types = Json::array();
    for (const auto& t : result.witness_types) types.push_back(pair_json(t));
    j["witness_circuit"] = result.witness_circuit;
    j["witness_types"] = std::move(types);
  }
  return j;
}

Json to_json(const CensusReport& report) {
  Json survivors = Json::array();
  for (const auto& s : report.survivors) {
    Json e;
    e["group"] = s.group.to_string();
    e["connection_set"] = format_element_set(s.connection_set);
    e["class"] = s.class_id;
    e["match"] = s.match ? Json(s.match->to_string()) : Json(nullptr);
    e["certificate"] = s.certificate ? to_json(*s.certificate) : Json(nullptr);
    survivors.push_back(std::move(e));
  }
  Json classes = Json::array();
  for (const auto& c : report.classes) {
    Json matches = Json::array();
    for (const auto& m : c.matches) matches.push_back(m.to_string());
    const auto& rep = report.survivors[c.representative];
    classes.push_back({
        {"representative", rep.group.to_string() + ":" +
                               format_element_set(rep.connection_set)},
        {"members", c.members},
        {"vertices", c.form.vertex_count},
        {"valency", c.form.vertex_count == 0
                        ? 0
                        : c.form.arcs.size() / c.form.vertex_count},
        {"matches", std::move(matches)},
    });
  }
  Json uncovered = Json::array();
  for (const auto& f : report.uncovered) uncovered.push_back(f.to_string());
  Json j;
  j["scope"] = kCensusScope;
  j["max_order"] = report.options.max_order;
  j["min_valency"] = report.options.min_valency;
  j["prune_automorphisms"] = report.options.prune_automorphisms;
  j["searched"] = report.searched;
  j["survivors"] = std::move(survivors);
  j["classes"] = std::move(classes);
  j["unmatched"] = report.unmatched;
  j["dedup_classes"] = report.dedup_classes;
  j["family_instances"] = report.family_instances;
  j["uncovered"] = std::move(uncovered);
  j["complete"] = report.complete;
  j["discrepancy"] = !report.unmatched.empty();
  return j;
}

}  // namespace wdrd
