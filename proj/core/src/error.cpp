#include "rhdt/error.hpp"

namespace rhdt {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NamespaceMismatch: return "NamespaceMismatch";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::UnknownSubject: return "UnknownSubject";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::DatatypeViolation: return "DatatypeViolation";
    case Errc::InvalidIri: return "InvalidIri";
    case Errc::InvalidLiteral: return "InvalidLiteral";
    case Errc::NotAProvenanceNode: return "NotAProvenanceNode";
    case Errc::DuplicateRuleId: return "DuplicateRuleId";
    case Errc::RuleSyntax: return "RuleSyntax";
    case Errc::SensorNotInGraph: return "SensorNotInGraph";
    case Errc::NotAMeasurement: return "NotAMeasurement";
    case Errc::ActionTargetMissing: return "ActionTargetMissing";
    case Errc::NotAnActivationEvent: return "NotAnActivationEvent";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace rhdt
