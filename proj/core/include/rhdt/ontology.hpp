#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhdt/iri.hpp"

namespace rhdt {

using ClassId = std::string;
using PropertyId = std::string;

enum class Namespace { CRM, CRMdig, CRMsci, CRMpe, HDTO, RHDTO };

std::string_view to_string(Namespace ns);
std::optional<Namespace> namespace_from_string(std::string_view name);
// Base IRI that class and property ids are appended to.
std::string_view namespace_base(Namespace ns);
// Conventional prefix name ("crmdig", "rhdto", ...).
std::string_view namespace_prefix(Namespace ns);

enum class LiteralKind { String, Decimal, Integer, DateTime, AnyUri };

std::string_view to_string(LiteralKind kind);
std::optional<LiteralKind> literal_kind_from_xsd(std::string_view iri);
std::string xsd_iri(LiteralKind kind);

// Class id symbols must carry the prefix of their namespace:
// E->CRM, D->CRMdig, S->CRMsci, PE->CRMpe, HC->HDTO/RHDTO.
bool class_symbol_matches(std::string_view id, Namespace ns);
// P->CRM, L->CRMdig, O->CRMsci, PP->CRMpe, HP->HDTO/RHDTO.
bool property_symbol_matches(std::string_view id, Namespace ns);

struct OntologyClassDef {
  ClassId id;
  std::string label;
  Namespace ns = Namespace::CRM;
  std::vector<ClassId> parents;
  std::string scope_note;

  friend bool operator==(const OntologyClassDef&,
                         const OntologyClassDef&) = default;
};

// A property range is either an ontology class or a literal datatype.
using PropertyRange = std::variant<ClassId, LiteralKind>;

struct PropertyDef {
  PropertyId id;
  std::string label;
  Namespace ns = Namespace::CRM;
  ClassId domain;
  PropertyRange range;

  friend bool operator==(const PropertyDef&, const PropertyDef&) = default;
};

class Registry {
 public:
  // Version tag of the embedded seed content.
  static constexpr std::string_view kSeedVersion = "rhdto-seed/1.0";

  Registry() = default;

  // The embedded CRM/CRMdig/CRMsci/CRMpe/HDTO/RHDTO seed.
  static Registry load_seed();

  void register_class(OntologyClassDef def);
  // Batch registration: parents may refer to classes earlier or later in the
  // batch. All-or-nothing; rejects cycles inside the batch.
  void register_classes(std::vector<OntologyClassDef> defs);
  void register_property(PropertyDef def);

  bool has_class(std::string_view id) const;
  bool has_property(std::string_view id) const;
  const OntologyClassDef& class_def(std::string_view id) const;
  const PropertyDef& property_def(std::string_view id) const;

  // Reflexive-transitive subclass test.
  bool is_subclass_of(std::string_view a, std::string_view b) const;
  std::set<ClassId> subclass_closure(std::string_view c) const;
  // True if any member of `types` is a subclass of `c`.
  bool any_subclass_of(const std::set<ClassId>& types,
                       std::string_view c) const;

  // Subject side must meet the domain; the object side meets the range when
  // the range is a literal kind or some object class is a subclass of it.
  // `object_classes` may be empty only for literal ranges.
  bool check_applicability(std::string_view property,
                           const std::set<ClassId>& subject_classes,
                           const std::set<ClassId>& object_classes) const;

  Iri class_iri(std::string_view id) const;
  Iri property_iri(std::string_view id) const;
  std::optional<ClassId> class_for_iri(const Iri& iri) const;
  std::optional<PropertyId> property_for_iri(const Iri& iri) const;

  const std::map<ClassId, OntologyClassDef, std::less<>>& classes() const {
    return classes_;
  }
  const std::map<PropertyId, PropertyDef, std::less<>>& properties() const {
    return properties_;
  }

  friend bool operator==(const Registry& a, const Registry& b) {
    return a.classes_ == b.classes_ && a.properties_ == b.properties_;
  }

 private:
  void require_class(std::string_view id) const;

  std::map<ClassId, OntologyClassDef, std::less<>> classes_;
  std::map<PropertyId, PropertyDef, std::less<>> properties_;
  std::map<ClassId, std::set<ClassId>, std::less<>> children_;
  std::map<std::string, ClassId, std::less<>> class_by_iri_;
  std::map<std::string, PropertyId, std::less<>> property_by_iri_;
};

}  // namespace rhdt
