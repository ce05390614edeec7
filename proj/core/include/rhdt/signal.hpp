#pragma once

#include <optional>
#include <string>

#include "rhdt/decimal.hpp"
#include "rhdt/iri.hpp"

namespace rhdt {

// Data carried by an HC12 signal.
struct SignalPayload {
  Iri signal_iri;
  Iri sensor_iri;
  std::string timestamp;  // ISO 8601 UTC
  Decimal value;
  std::string unit;
  std::string measured_type;
  std::optional<std::string> quality;

  // Single-line JSON, keys ascending (measuredType, quality, sensorId,
  // signalId, timestamp, unit, value), no insignificant whitespace, value as
  // a minimal decimal string. `quality` is omitted when absent.
  std::string encode() const;

  friend bool operator==(const SignalPayload&, const SignalPayload&) = default;
};

}  // namespace rhdt
