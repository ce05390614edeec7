#include "rhdt/graph.hpp"

#include <algorithm>
#include <chrono>
#include <regex>

#include "rhdt/decimal.hpp"
#include "rhdt/error.hpp"

namespace rhdt {

namespace {

bool is_integer_lexical(std::string_view v) {
  std::size_t i = (!v.empty() && (v[0] == '+' || v[0] == '-')) ? 1 : 0;
  if (i == v.size()) return false;
  for (; i < v.size(); ++i) {
    if (v[i] < '0' || v[i] > '9') return false;
  }
  return true;
}

bool is_utc_datetime(const std::string& v) {
  static const std::regex re(
      R"(^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(\.\d+)?Z$)");
  std::smatch m;
  if (!std::regex_match(v, m, re)) return false;
  using namespace std::chrono;
  const year_month_day ymd{year{std::stoi(m[1])},
                           month{static_cast<unsigned>(std::stoi(m[2]))},
                           day{static_cast<unsigned>(std::stoi(m[3]))}};
  return ymd.ok() && std::stoi(m[4]) < 24 && std::stoi(m[5]) < 60 &&
         std::stoi(m[6]) < 60;
}

std::string describe(const std::set<ClassId>& types) {
  std::string out = "{";
  for (const auto& t : types) {
    if (out.size() > 1) out += ", ";
    out += t;
  }
  return out + "}";
}

Errc errc_for(ViolationReason r) {
  switch (r) {
    case ViolationReason::UnknownSubject: return Errc::UnknownSubject;
    case ViolationReason::UnknownObject: return Errc::UnknownObject;
    case ViolationReason::UnknownProperty: return Errc::UnknownProperty;
    case ViolationReason::DomainViolation: return Errc::DomainViolation;
    case ViolationReason::RangeViolation: return Errc::RangeViolation;
    case ViolationReason::DatatypeViolation: return Errc::DatatypeViolation;
  }
  return Errc::DomainViolation;
}

}  // namespace

bool literal_is_well_formed(const Literal& literal) {
  switch (literal.datatype) {
    case LiteralKind::String: return true;
    case LiteralKind::Decimal: return Decimal::parse(literal.value).has_value();
    case LiteralKind::Integer: return is_integer_lexical(literal.value);
    case LiteralKind::DateTime: return is_utc_datetime(literal.value);
    case LiteralKind::AnyUri: return is_absolute_iri(literal.value);
  }
  return false;
}

bool annotation::is_reserved(std::string_view key) {
  return key == kLabel || key == kPayload || key == kConditionState ||
         key == kAction || key == kInResponseTo;
}

std::string_view to_string(ViolationReason reason) {
  switch (reason) {
    case ViolationReason::UnknownSubject: return "UnknownSubject";
    case ViolationReason::UnknownObject: return "UnknownObject";
    case ViolationReason::UnknownProperty: return "UnknownProperty";
    case ViolationReason::DomainViolation: return "DomainViolation";
    case ViolationReason::RangeViolation: return "RangeViolation";
    case ViolationReason::DatatypeViolation: return "DatatypeViolation";
  }
  return "?";
}

Graph::Graph(std::shared_ptr<const Registry> registry, PrefixMap prefixes)
    : registry_(std::move(registry)), prefixes_(std::move(prefixes)) {}

void Graph::add_entity(const Iri& iri, const std::set<ClassId>& types) {
  if (types.empty()) {
    throw Error(Errc::UnknownClass, "entity " + iri.str() + " needs a type");
  }
  for (const auto& t : types) {
    if (!registry_->has_class(t)) {
      throw Error(Errc::UnknownClass, "unknown class '" + t + "'");
    }
  }
  auto [it, inserted] = nodes_.try_emplace(iri, EntityNode{iri, {}, {}});
  it->second.types.insert(types.begin(), types.end());
}

void Graph::set_annotation(const Iri& iri, std::string_view key,
                           Literal value) {
  auto it = nodes_.find(iri);
  if (it == nodes_.end()) {
    throw Error(Errc::UnknownSubject, "no node " + iri.str());
  }
  if (!annotation::is_reserved(key)) {
    throw Error(Errc::UnknownProperty,
                "unknown annotation '" + std::string(key) + "'");
  }
  if (!literal_is_well_formed(value)) {
    throw Error(Errc::DatatypeViolation,
                "annotation value does not match its datatype");
  }
  it->second.annotations.insert_or_assign(std::string(key), std::move(value));
}

std::optional<Violation> Graph::check(const Statement& s) const {
  auto violation = [&](ViolationReason r, std::string msg) {
    return Violation{s, r, std::move(msg)};
  };
  if (!registry_->has_property(s.property)) {
    return violation(ViolationReason::UnknownProperty,
                     "unknown property '" + s.property + "'");
  }
  const auto& prop = registry_->property_def(s.property);
  const auto* subject = find_node(s.subject);
  if (subject == nullptr) {
    return violation(ViolationReason::UnknownSubject,
                     "subject " + s.subject.str() + " is not a typed node");
  }
  const EntityNode* object = nullptr;
  if (const auto* iri = std::get_if<Iri>(&s.object)) {
    object = find_node(*iri);
    if (object == nullptr) {
      return violation(ViolationReason::UnknownObject,
                       "object " + iri->str() + " is not a typed node");
    }
  }
  if (!registry_->any_subclass_of(subject->types, prop.domain)) {
    return violation(ViolationReason::DomainViolation,
                     s.property + " requires subject of class " + prop.domain +
                         ", got " + describe(subject->types));
  }
  if (const auto* range_class = std::get_if<ClassId>(&prop.range)) {
    if (object == nullptr) {
      return violation(ViolationReason::RangeViolation,
                       s.property + " requires object of class " +
                           *range_class + ", got a literal");
    }
    if (!registry_->any_subclass_of(object->types, *range_class)) {
      return violation(ViolationReason::RangeViolation,
                       s.property + " requires object of class " +
                           *range_class + ", got " + describe(object->types));
    }
    return std::nullopt;
  }
  const auto kind = std::get<LiteralKind>(prop.range);
  const auto* literal = std::get_if<Literal>(&s.object);
  if (literal == nullptr) {
    return violation(ViolationReason::RangeViolation,
                     s.property + " requires a " +
                         std::string(to_string(kind)) + " literal");
  }
  if (literal->datatype != kind || !literal_is_well_formed(*literal)) {
    return violation(ViolationReason::DatatypeViolation,
                     s.property + " requires a well-formed " +
                         std::string(to_string(kind)) + " literal");
  }
  return std::nullopt;
}

bool Graph::add_statement(const Statement& s) {
  if (auto v = check(s)) throw Error(errc_for(v->reason), v->message);
  return insert_unvalidated(s);
}

bool Graph::insert_unvalidated(const Statement& s) {
  if (!index_.insert(s).second) return false;
  statements_.push_back(s);
  return true;
}

const EntityNode& Graph::node(const Iri& iri) const {
  const auto* n = find_node(iri);
  if (n == nullptr) throw Error(Errc::UnknownSubject, "no node " + iri.str());
  return *n;
}

const EntityNode* Graph::find_node(const Iri& iri) const {
  const auto it = nodes_.find(iri);
  return it == nodes_.end() ? nullptr : &it->second;
}

bool Graph::has_type(const Iri& iri, std::string_view cls) const {
  const auto* n = find_node(iri);
  return n != nullptr && registry_->any_subclass_of(n->types, cls);
}

ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  for (const auto& s : g.statements()) {
    if (auto v = g.check(s)) report.violations.push_back(std::move(*v));
  }
  return report;
}

std::vector<Iri> instances_of(const Graph& g, std::string_view cls,
                              bool transitive) {
  const auto& reg = g.registry();
  const std::set<ClassId> accepted =
      transitive ? reg.subclass_closure(cls) : std::set<ClassId>{ClassId(cls)};
  if (!transitive && !reg.has_class(cls)) {
    throw Error(Errc::UnknownClass, "unknown class '" + std::string(cls) + "'");
  }
  std::vector<Iri> out;
  for (const auto& [iri, node] : g.nodes()) {
    if (std::any_of(node.types.begin(), node.types.end(),
                    [&](const ClassId& t) { return accepted.count(t) != 0; })) {
      out.push_back(iri);
    }
  }
  return out;
}

std::vector<Object> objects_of(const Graph& g, const Iri& subject,
                               std::string_view property) {
  if (!g.registry().has_property(property)) {
    throw Error(Errc::UnknownProperty,
                "unknown property '" + std::string(property) + "'");
  }
  g.node(subject);
  std::vector<Object> out;
  for (const auto& s : g.statements()) {
    if (s.subject == subject && s.property == property) out.push_back(s.object);
  }
  return out;
}

namespace {

const Statement* first_outgoing(const Graph& g, const Iri& subject,
                                std::string_view property) {
  for (const auto& s : g.statements()) {
    if (s.subject == subject && s.property == property &&
        std::holds_alternative<Iri>(s.object)) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<const Statement*> incoming(const Graph& g, const Iri& object,
                                       std::string_view property) {
  std::vector<const Statement*> out;
  for (const auto& s : g.statements()) {
    const auto* o = std::get_if<Iri>(&s.object);
    if (o != nullptr && *o == object && s.property == property) {
      out.push_back(&s);
    }
  }
  return out;
}

// Signal -> measurement -> sensor -> asset/place.
void walk_from_signal(const Graph& g, const Iri& signal,
                      std::vector<Statement>& chain);

void walk_from_measurement(const Graph& g, const Iri& measurement,
                           std::vector<Statement>& chain) {
  const auto* on_device = first_outgoing(g, measurement, "L12");
  if (on_device == nullptr) return;
  chain.push_back(*on_device);
  const auto& sensor = std::get<Iri>(on_device->object);
  const auto* placed = first_outgoing(g, sensor, "HP15");
  if (placed == nullptr) placed = first_outgoing(g, sensor, "P55");
  if (placed != nullptr) chain.push_back(*placed);
}

void walk_from_signal(const Graph& g, const Iri& signal,
                      std::vector<Statement>& chain) {
  const auto created = incoming(g, signal, "L20");
  if (created.empty()) return;
  chain.push_back(*created.front());
  walk_from_measurement(g, created.front()->subject, chain);
}

}  // namespace

std::vector<Statement> provenance_chain(const Graph& g, const Iri& from) {
  const auto& n = g.node(from);
  const auto& reg = g.registry();
  std::vector<Statement> chain;
  if (reg.any_subclass_of(n.types, "HC14")) {
    const auto triggered = incoming(g, from, "O13");
    if (triggered.empty()) return chain;
    chain.push_back(*triggered.front());
    const auto& decider = triggered.front()->subject;

    const auto transmissions = incoming(g, decider, "HP12");
    const Statement* transmission = nullptr;
    const auto cause = n.annotations.find(annotation::kInResponseTo);
    if (cause != n.annotations.end()) {
      for (const auto* t : transmissions) {
        if (t->subject.str() == cause->second.value) transmission = t;
      }
    } else if (transmissions.size() == 1) {
      transmission = transmissions.front();
    }
    if (transmission == nullptr) return chain;
    chain.push_back(*transmission);
    walk_from_signal(g, transmission->subject, chain);
  } else if (reg.any_subclass_of(n.types, "HC12")) {
    walk_from_signal(g, from, chain);
  } else if (reg.any_subclass_of(n.types, "HC13")) {
    walk_from_measurement(g, from, chain);
  } else {
    throw Error(Errc::NotAProvenanceNode,
                from.str() + " is not an activation event, signal or measurement");
  }
  return chain;
}

bool graph_equal(const Graph& a, const Graph& b) {
  if (!(a.prefixes() == b.prefixes()) || a.nodes() != b.nodes() ||
      a.statements().size() != b.statements().size()) {
    return false;
  }
  return std::all_of(a.statements().begin(), a.statements().end(),
                     [&](const Statement& s) { return b.contains(s); });
}

}  // namespace rhdt
