#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhdt {

enum class Errc {
  DuplicateId,
  UnknownParent,
  CycleDetected,
  NamespaceMismatch,
  UnknownClass,
  UnknownProperty,
  UnknownSubject,
  UnknownObject,
  DomainViolation,
  RangeViolation,
  DatatypeViolation,
  InvalidIri,
  InvalidLiteral,
  NotAProvenanceNode,
  DuplicateRuleId,
  RuleSyntax,
  SensorNotInGraph,
  NotAMeasurement,
  ActionTargetMissing,
  NotAnActivationEvent,
  ConfigError,
};

std::string_view to_string(Errc code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rhdt
