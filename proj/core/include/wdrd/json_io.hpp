#pragma once

#include <nlohmann/json.hpp>

#include "wdrd/arcs.hpp"
#include "wdrd/census.hpp"
#include "wdrd/digraph.hpp"
#include "wdrd/families.hpp"
#include "wdrd/iso.hpp"
#include "wdrd/scheme.hpp"

namespace wdrd {

using Json = nlohmann::json;

// {"n": int, "arcs": [[u,v],...], "labels": [...]}
Json to_json(const Digraph& digraph);
// Throws ParseError on schema violations and StructuralError on bad arcs.
Digraph digraph_from_json(const Json& j);

// {"relations":[[a,b],...],"valencies":[...],"p":[[h,i,j,value],...]}
Json to_json(const IntersectionTensor& tensor);
Json to_json(const CaseVerdict& verdict);
Json to_json(const IsoCertificate& certificate);
Json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);
Json to_json(const WdrdVerdict& verdict, const RelationPartition& relations);
Json to_json(const Lemma1Report& report);
Json to_json(const PurityResult& result);
Json to_json(const CensusReport& report);

}  // namespace wdrd
