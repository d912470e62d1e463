#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "adhesia/category.hpp"
#include "adhesia/dpo.hpp"
#include "adhesia/limits.hpp"

namespace adhesia {

using Json = nlohmann::json;

/// Compact term syntax: `a`, `{a,{b}}`, `(x,y)` for pairs, `[a,b]` for
/// sequences and `()` for the unit. Atom names are runs of characters other
/// than whitespace and `{}[](),`. Throws ParseError.
Term parse_term(std::string_view text);

Json to_json(const Term& t);
Term term_from_json(const Json& j);

Json to_json(const FinSet& s);
FinSet finset_from_json(const Json& j);

Json to_json(const FinFunction& f);
FinFunction function_from_json(const Json& j);

/// Morphism tables {"nodes": {...}, "edges": {...}}.
Json morphism_to_json(const SortedFunction& f);
SortedFunction morphism_from_json(const Json& j, const CoalgGraph& src, const CoalgGraph& dst);

Json to_json(const CoalgGraph& G);
/// Missing contains entries default to the unit.
CoalgGraph graph_from_json(const Json& j);

Json to_json(const Rule& r);
Rule rule_from_json(const Json& j);

/// {"f": fn, "g": fn} for one sort, or {"f": {"N": fn, "E": fn}, "g": ...}.
Json to_json(const Cospan& cs);
Cospan cospan_from_json(const Json& j);

/// {"graphs": {"A'": ..., "A": ...}, "morphisms": {"m'": ..., "a": ...}}.
Json to_json(const VkCube& cube);
VkCube cube_from_json(const Json& j);

Json to_json(const PreservationVerdict& v);
Json to_json(const VkVerdict& v);
Json to_json(const MClassReport& r);
Json to_json(const NodeProperties& p);
Json to_json(const EdgeProperties& p);

/// Deterministic rendering: two-space indent, sorted keys, trailing newline.
std::string render(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace adhesia
