#include "rhdt/signal.hpp"

#include <nlohmann/json.hpp>

namespace rhdt {

std::string SignalPayload::encode() const {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  nlohmann::json j = {
      {"measuredType", measured_type},
      {"sensorId", sensor_iri.str()},
      {"signalId", signal_iri.str()},
      {"timestamp", timestamp},
      {"unit", unit},
      {"value", value.to_string()},
  };
  if (quality) j["quality"] = *quality;
  return j.dump();
}

}  // namespace rhdt
