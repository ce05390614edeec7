#include <nlohmann/json.hpp>

#include "rhdt/runtime.hpp"

namespace rhdt {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Measurement: return "measurement";
    case EventKind::Signal: return "signal";
    case EventKind::Transmission: return "transmission";
    case EventKind::Decision: return "decision";
    case EventKind::Activation: return "activation";
    case EventKind::Actuation: return "actuation";
    case EventKind::Alert: return "alert";
  }
  return "?";
}

std::string EventRecord::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : fields) {
    std::visit([&, &key = key](const auto& v) { j[key] = v; }, value);
  }
  j["kind"] = std::string(to_string(kind));
  j["seq"] = seq;
  j["tick"] = tick;
  return j.dump();
}

std::string render_log(const std::vector<EventRecord>& log,
                       const std::optional<std::string>& abort_reason) {
  std::string out;
  for (const auto& r : log) {
    out += r.to_json();
    out += '\n';
  }
  if (abort_reason) {
    nlohmann::json marker = {{"aborted", true}, {"message", *abort_reason}};
    out += marker.dump();
    out += '\n';
  }
  return out;
}

RunSummary summarize(const std::vector<EventRecord>& log, std::int64_t ticks) {
  RunSummary s;
  s.ticks = ticks;
  for (const auto& r : log) {
    switch (r.kind) {
      case EventKind::Measurement: ++s.measurements; break;
      case EventKind::Signal: ++s.signals; break;
      case EventKind::Activation: ++s.activations; break;
      case EventKind::Alert: ++s.alerts; break;
      default: break;
    }
  }
  return s;
}

std::string format_summary(const RunSummary& s) {
  return "ticks=" + std::to_string(s.ticks) +
         " measurements=" + std::to_string(s.measurements) +
         " signals=" + std::to_string(s.signals) +
         " activations=" + std::to_string(s.activations) +
         " alerts=" + std::to_string(s.alerts);
}

}  // namespace rhdt
