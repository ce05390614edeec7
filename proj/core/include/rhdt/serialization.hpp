#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhdt/diagnostic.hpp"
#include "rhdt/graph.hpp"
#include "rhdt/ontology.hpp"

namespace rhdt {

// Text format (.rht.ttl): a Turtle subset with @prefix, `a`, `;` and `,`
// lists, IRIs, CURIEs, quoted strings, bare decimals and ^^datatype.
// No blank nodes, collections, long strings, language tags or relative IRIs.

inline constexpr std::string_view kGraphFileExtension = ".rht.ttl";

struct ParseResult {
  std::optional<Graph> graph;  // absent iff any error diagnostic
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return graph.has_value(); }
};

// Two passes: typed nodes first, then statements, so forward references are
// legal. Semantic violations are reported at the statement's position.
ParseResult parse_graph(std::string_view text,
                        std::shared_ptr<const Registry> registry);

// Canonical form: prefixes by name, subjects by expanded IRI, `a` types first
// (sorted), then properties by id, then annotations by key; objects sorted.
// LF line endings.
std::string emit_graph(const Graph& g);

// Registry extension files use the same syntax with the tool vocabulary:
//   rhdto:HCX a rht:Class ; rht:subClassOf rhdto:HC9 ; rht:label "X" .
//   rhdto:HPX a rht:Property ; rht:domain rhdto:HC9 ; rht:range crm:E53 .
// rht:range may also name an xsd datatype. The namespace is taken from the
// subject IRI. On success the classes and properties are registered into
// `registry`; on any error it is left unchanged.
std::vector<ParseDiagnostic> load_registry_extension(std::string_view text,
                                                     Registry& registry);

}  // namespace rhdt
