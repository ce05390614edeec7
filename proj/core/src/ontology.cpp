#include "rhdt/ontology.hpp"

#include <deque>

#include "rhdt/error.hpp"

namespace rhdt {

std::string_view to_string(Namespace ns) {
  switch (ns) {
    case Namespace::CRM: return "CRM";
    case Namespace::CRMdig: return "CRMdig";
    case Namespace::CRMsci: return "CRMsci";
    case Namespace::CRMpe: return "CRMpe";
    case Namespace::HDTO: return "HDTO";
    case Namespace::RHDTO: return "RHDTO";
  }
  return "?";
}

std::optional<Namespace> namespace_from_string(std::string_view name) {
  for (auto ns : {Namespace::CRM, Namespace::CRMdig, Namespace::CRMsci,
                  Namespace::CRMpe, Namespace::HDTO, Namespace::RHDTO}) {
    if (to_string(ns) == name) return ns;
  }
  return std::nullopt;
}

std::string_view namespace_base(Namespace ns) {
  switch (ns) {
    case Namespace::CRM: return ns::kCrm;
    case Namespace::CRMdig: return ns::kCrmDig;
    case Namespace::CRMsci: return ns::kCrmSci;
    case Namespace::CRMpe: return ns::kCrmPe;
    case Namespace::HDTO: return ns::kHdto;
    case Namespace::RHDTO: return ns::kRhdto;
  }
  return {};
}

std::string_view namespace_prefix(Namespace ns) {
  switch (ns) {
    case Namespace::CRM: return "crm";
    case Namespace::CRMdig: return "crmdig";
    case Namespace::CRMsci: return "crmsci";
    case Namespace::CRMpe: return "crmpe";
    case Namespace::HDTO: return "hdto";
    case Namespace::RHDTO: return "rhdto";
  }
  return {};
}

std::string_view to_string(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::String: return "string";
    case LiteralKind::Decimal: return "decimal";
    case LiteralKind::Integer: return "integer";
    case LiteralKind::DateTime: return "dateTime";
    case LiteralKind::AnyUri: return "anyURI";
  }
  return "?";
}

std::string xsd_iri(LiteralKind kind) {
  return std::string(ns::kXsd) + std::string(to_string(kind));
}

std::optional<LiteralKind> literal_kind_from_xsd(std::string_view iri) {
  for (auto k : {LiteralKind::String, LiteralKind::Decimal,
                 LiteralKind::Integer, LiteralKind::DateTime,
                 LiteralKind::AnyUri}) {
    if (xsd_iri(k) == iri) return k;
  }
  return std::nullopt;
}

namespace {

bool starts_with_number(std::string_view id, std::string_view symbol) {
  return id.size() > symbol.size() && id.substr(0, symbol.size()) == symbol;
}

bool symbol_matches(std::string_view id, Namespace ns,
                    std::string_view crm, std::string_view dig,
                    std::string_view sci, std::string_view pe,
                    std::string_view hdto) {
  // Longer symbols first: "PE"/"PP" must not be read as CRM "P".
  if (starts_with_number(id, pe)) return ns == Namespace::CRMpe;
  if (starts_with_number(id, hdto)) {
    return ns == Namespace::HDTO || ns == Namespace::RHDTO;
  }
  if (starts_with_number(id, crm)) return ns == Namespace::CRM;
  if (starts_with_number(id, dig)) return ns == Namespace::CRMdig;
  if (starts_with_number(id, sci)) return ns == Namespace::CRMsci;
  return false;
}

}  // namespace

bool class_symbol_matches(std::string_view id, Namespace ns) {
  return symbol_matches(id, ns, "E", "D", "S", "PE", "HC");
}

bool property_symbol_matches(std::string_view id, Namespace ns) {
  return symbol_matches(id, ns, "P", "L", "O", "PP", "HP");
}

Registry Registry::load_seed() {
  using N = Namespace;
  Registry reg;
  std::vector<OntologyClassDef> classes = {
      {"E1", "CRM Entity", N::CRM, {}, "Root of the class hierarchy."},
      {"E3", "Condition State", N::CRM, {"E1"},
       "State of a thing over a period, e.g. operational or faulty."},
      {"E5", "Event", N::CRM, {"E1"}, "Something that happens in time."},
      {"E39", "Actor", N::CRM, {"E1"},
       "People or groups able to act, e.g. a conservation office."},
      {"E53", "Place", N::CRM, {"E1"}, "A spatial extent."},
      {"E55", "Type", N::CRM, {"E1"}, "A concept used to classify things."},
      {"D8", "Digital Device", N::CRMdig, {"E1"},
       "Material item that processes or produces digital data."},
      {"D9", "Data Object", N::CRMdig, {"E1"}, "Identifiable digital data."},
      {"D14", "Software", N::CRMdig, {"D9"}, "Executable program code."},
      {"S21", "Measurement", N::CRMsci, {"E5"},
       "Action of measuring a property of something."},
      {"PE1", "Service", N::CRMpe, {"E1"}, "A provided service."},
      {"HC1", "Heritage Entity", N::HDTO, {"E1"},
       "Tangible or intangible asset of cultural value."},
      {"HC2", "Digital Twin", N::HDTO, {"E1"},
       "Complex of digital information about a heritage entity."},
      {"HC3", "Tangible Aspect", N::HDTO, {"HC1"},
       "Material component of a heritage entity."},
      {"HC4", "Intangible Aspect", N::HDTO, {"HC1"},
       "Immaterial component of a heritage entity."},
      {"HC6", "Digital Heritage Document", N::HDTO, {"E1"},
       "Digital document about a heritage entity."},
      {"HC7", "Digital Visual Object", N::HDTO, {"E1"},
       "Digital visual representation."},
      {"HC8", "3D Model", N::HDTO, {"HC7"}, "Three-dimensional model."},
      {"HC9", "Sensor", N::RHDTO, {"D8"},
       "Device measuring physical quantities of or near a heritage asset."},
      {"HC10", "Decider", N::RHDTO, {"PE1"},
       "Service evaluating signals against decision rules."},
      {"HC11", "Activator", N::RHDTO, {"D8"},
       "Device executing actions commanded by a decider."},
      {"HC12", "Signal", N::RHDTO, {"D9"},
       "Encoded data produced by a sensor measurement."},
      {"HC13", "Sensor Measurement", N::RHDTO, {"S21"},
       "Measurement event performed by a sensor."},
      {"HC14", "Activation Event", N::RHDTO, {"E5"},
       "Event recording the actions that follow a decision."},
  };
  reg.register_classes(std::move(classes));

  const std::vector<PropertyDef> properties = {
      {"HP1", "is digital twin of", N::HDTO, "HC2", ClassId("HC1")},
      {"HP11", "is operated by", N::RHDTO, "HC9", ClassId("D14")},
      {"HP12", "was transmitted to", N::RHDTO, "HC12", ClassId("HC10")},
      {"HP13", "activated", N::RHDTO, "HC14", ClassId("HC11")},
      {"HP14", "alerted", N::RHDTO, "HC14", ClassId("E39")},
      {"HP15", "is positioned on", N::RHDTO, "HC9", ClassId("HC3")},
      {"P55", "has current location", N::CRM, "E1", ClassId("E53")},
      {"L12", "happened on device", N::CRMdig, "S21", ClassId("D8")},
      {"L17", "measured thing of type", N::CRMdig, "HC13", ClassId("E55")},
      {"L20", "has created", N::CRMdig, "S21", ClassId("D9")},
      {"O13", "triggered", N::CRMsci, "HC10", ClassId("HC14")},
      {"O24", "measured", N::CRMsci, "S21", ClassId("E5")},
  };
  for (const auto& p : properties) reg.register_property(p);
  return reg;
}

void Registry::register_class(OntologyClassDef def) {
  std::vector<OntologyClassDef> batch;
  batch.push_back(std::move(def));
  register_classes(std::move(batch));
}

void Registry::register_classes(std::vector<OntologyClassDef> defs) {
  std::map<ClassId, const OntologyClassDef*> pending;
  for (const auto& def : defs) {
    if (has_class(def.id) || pending.count(def.id) != 0) {
      throw Error(Errc::DuplicateId, "class '" + def.id + "' already registered");
    }
    if (!class_symbol_matches(def.id, def.ns)) {
      throw Error(Errc::NamespaceMismatch,
                  "class id '" + def.id + "' does not use the symbol of " +
                      std::string(to_string(def.ns)));
    }
    pending.emplace(def.id, &def);
  }
  for (const auto& def : defs) {
    for (const auto& parent : def.parents) {
      if (parent == def.id) {
        throw Error(Errc::CycleDetected, "class '" + def.id + "' is its own parent");
      }
      if (!has_class(parent) && pending.count(parent) == 0) {
        throw Error(Errc::UnknownParent,
                    "class '" + def.id + "' has unknown parent '" + parent + "'");
      }
    }
  }

  // Kahn's algorithm over the batch; registered classes are already sinks.
  std::map<ClassId, std::size_t> unresolved;
  std::map<ClassId, std::vector<ClassId>> waiting;
  std::deque<ClassId> ready;
  for (const auto& [id, def] : pending) {
    std::size_t n = 0;
    for (const auto& parent : def->parents) {
      if (pending.count(parent) != 0) {
        ++n;
        waiting[parent].push_back(id);
      }
    }
    unresolved[id] = n;
    if (n == 0) ready.push_back(id);
  }
  std::vector<ClassId> order;
  while (!ready.empty()) {
    auto id = ready.front();
    ready.pop_front();
    order.push_back(id);
    for (const auto& child : waiting[id]) {
      if (--unresolved[child] == 0) ready.push_back(child);
    }
  }
  if (order.size() != pending.size()) {
    throw Error(Errc::CycleDetected, "subclass cycle among new classes");
  }

  for (auto& def : defs) {
    const auto iri = std::string(namespace_base(def.ns)) + def.id;
    for (const auto& parent : def.parents) children_[parent].insert(def.id);
    class_by_iri_[iri] = def.id;
    auto id = def.id;
    classes_.emplace(std::move(id), std::move(def));
  }
}

void Registry::register_property(PropertyDef def) {
  if (has_property(def.id)) {
    throw Error(Errc::DuplicateId, "property '" + def.id + "' already registered");
  }
  if (!property_symbol_matches(def.id, def.ns)) {
    throw Error(Errc::NamespaceMismatch,
                "property id '" + def.id + "' does not use the symbol of " +
                    std::string(to_string(def.ns)));
  }
  require_class(def.domain);
  if (const auto* range = std::get_if<ClassId>(&def.range)) {
    require_class(*range);
  }
  property_by_iri_[std::string(namespace_base(def.ns)) + def.id] = def.id;
  auto id = def.id;
  properties_.emplace(std::move(id), std::move(def));
}

bool Registry::has_class(std::string_view id) const {
  return classes_.find(id) != classes_.end();
}

bool Registry::has_property(std::string_view id) const {
  return properties_.find(id) != properties_.end();
}

void Registry::require_class(std::string_view id) const {
  if (!has_class(id)) {
    throw Error(Errc::UnknownClass, "unknown class '" + std::string(id) + "'");
  }
}

const OntologyClassDef& Registry::class_def(std::string_view id) const {
  const auto it = classes_.find(id);
  if (it == classes_.end()) {
    throw Error(Errc::UnknownClass, "unknown class '" + std::string(id) + "'");
  }
  return it->second;
}

const PropertyDef& Registry::property_def(std::string_view id) const {
  const auto it = properties_.find(id);
  if (it == properties_.end()) {
    throw Error(Errc::UnknownProperty,
                "unknown property '" + std::string(id) + "'");
  }
  return it->second;
}

bool Registry::is_subclass_of(std::string_view a, std::string_view b) const {
  require_class(a);
  require_class(b);
  if (a == b) return true;
  std::set<std::string_view> seen{a};
  std::deque<std::string_view> queue{a};
  while (!queue.empty()) {
    const auto& def = classes_.find(queue.front())->second;
    queue.pop_front();
    for (const auto& parent : def.parents) {
      if (parent == b) return true;
      if (seen.insert(parent).second) queue.push_back(parent);
    }
  }
  return false;
}

std::set<ClassId> Registry::subclass_closure(std::string_view c) const {
  require_class(c);
  std::set<ClassId> out{ClassId(c)};
  std::deque<ClassId> queue{ClassId(c)};
  while (!queue.empty()) {
    const auto it = children_.find(queue.front());
    queue.pop_front();
    if (it == children_.end()) continue;
    for (const auto& child : it->second) {
      if (out.insert(child).second) queue.push_back(child);
    }
  }
  return out;
}

bool Registry::any_subclass_of(const std::set<ClassId>& types,
                               std::string_view c) const {
  for (const auto& t : types) {
    if (is_subclass_of(t, c)) return true;
  }
  return false;
}

bool Registry::check_applicability(
    std::string_view property, const std::set<ClassId>& subject_classes,
    const std::set<ClassId>& object_classes) const {
  const auto& def = property_def(property);
  for (const auto& c : subject_classes) require_class(c);
  for (const auto& c : object_classes) require_class(c);
  if (!any_subclass_of(subject_classes, def.domain)) return false;
  if (std::holds_alternative<LiteralKind>(def.range)) return true;
  return any_subclass_of(object_classes, std::get<ClassId>(def.range));
}

Iri Registry::class_iri(std::string_view id) const {
  const auto& def = class_def(id);
  return Iri(std::string(namespace_base(def.ns)) + def.id);
}

Iri Registry::property_iri(std::string_view id) const {
  const auto& def = property_def(id);
  return Iri(std::string(namespace_base(def.ns)) + def.id);
}

std::optional<ClassId> Registry::class_for_iri(const Iri& iri) const {
  const auto it = class_by_iri_.find(iri.str());
  if (it == class_by_iri_.end()) return std::nullopt;
  return it->second;
}

std::optional<PropertyId> Registry::property_for_iri(const Iri& iri) const {
  const auto it = property_by_iri_.find(iri.str());
  if (it == property_by_iri_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rhdt
