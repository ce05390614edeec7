#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhdt/iri.hpp"
#include "rhdt/ontology.hpp"

namespace rhdt {

struct Literal {
  std::string value;
  LiteralKind datatype = LiteralKind::String;

  static Literal string(std::string v) { return {std::move(v), LiteralKind::String}; }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Checks `value` against the lexical form of its datatype. dateTime must be
// ISO 8601 UTC ("...Z").
bool literal_is_well_formed(const Literal& literal);

using Object = std::variant<Iri, Literal>;

// Reserved annotation keys. Annotations are node metadata in the tool
// vocabulary; they are not ontology statements and are not validated against
// the registry.
namespace annotation {
inline constexpr std::string_view kLabel = "label";
inline constexpr std::string_view kPayload = "payload";
inline constexpr std::string_view kConditionState = "conditionState";
inline constexpr std::string_view kAction = "action";
inline constexpr std::string_view kInResponseTo = "inResponseTo";
bool is_reserved(std::string_view key);
}  // namespace annotation

struct EntityNode {
  Iri iri;
  std::set<ClassId> types;
  std::map<std::string, Literal, std::less<>> annotations;

  friend bool operator==(const EntityNode&, const EntityNode&) = default;
};

struct Statement {
  Iri subject;
  PropertyId property;
  Object object;

  friend auto operator<=>(const Statement&, const Statement&) = default;
};

enum class ViolationReason {
  UnknownSubject,
  UnknownObject,
  UnknownProperty,
  DomainViolation,
  RangeViolation,
  DatatypeViolation,
};

std::string_view to_string(ViolationReason reason);

struct Violation {
  Statement statement;
  ViolationReason reason;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// In-memory statement store bound to an ontology registry. Statements are
// validated on insertion; insert_unvalidated exists for loaders that report
// problems in bulk through validate_graph.
class Graph {
 public:
  explicit Graph(std::shared_ptr<const Registry> registry,
                 PrefixMap prefixes = {});

  const Registry& registry() const { return *registry_; }
  std::shared_ptr<const Registry> registry_ptr() const { return registry_; }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }
  Iri resolve(std::string_view text) const { return prefixes_.expand(text); }

  // Re-adding merges type sets.
  void add_entity(const Iri& iri, const std::set<ClassId>& types);
  void set_annotation(const Iri& iri, std::string_view key, Literal value);

  // Returns false if the triple was already present.
  bool add_statement(const Statement& s);
  bool insert_unvalidated(const Statement& s);

  bool has_node(const Iri& iri) const { return nodes_.count(iri) != 0; }
  const EntityNode& node(const Iri& iri) const;  // throws UnknownSubject
  const EntityNode* find_node(const Iri& iri) const;
  bool has_type(const Iri& iri, std::string_view cls) const;

  const std::map<Iri, EntityNode>& nodes() const { return nodes_; }
  // Insertion order.
  const std::vector<Statement>& statements() const { return statements_; }
  bool contains(const Statement& s) const { return index_.count(s) != 0; }

  // First violation of `s` against the current nodes, if any.
  std::optional<Violation> check(const Statement& s) const;

 private:
  std::shared_ptr<const Registry> registry_;
  PrefixMap prefixes_;
  std::map<Iri, EntityNode> nodes_;
  std::vector<Statement> statements_;
  std::set<Statement> index_;
};

ValidationReport validate_graph(const Graph& g);

// Sorted by expanded IRI.
std::vector<Iri> instances_of(const Graph& g, std::string_view cls,
                              bool transitive);

// Insertion order.
std::vector<Object> objects_of(const Graph& g, const Iri& subject,
                               std::string_view property);

// Backward walk from an activation event, signal or measurement:
//   act <-O13- decider <-HP12- signal <-L20- measurement -L12-> sensor
//   -(HP15|P55)-> asset or place
// Stops at the first missing link.
std::vector<Statement> provenance_chain(const Graph& g, const Iri& from);

// Same nodes (types, annotations), same statement set, same prefixes.
bool graph_equal(const Graph& a, const Graph& b);

}  // namespace rhdt
