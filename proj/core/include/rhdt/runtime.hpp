#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhdt/decimal.hpp"
#include "rhdt/graph.hpp"
#include "rhdt/iri.hpp"
#include "rhdt/ontology.hpp"
#include "rhdt/rules.hpp"
#include "rhdt/signal.hpp"

namespace rhdt {

// ---------------------------------------------------------------------------
// Deterministic randomness

// SplitMix64 (Steele, Lea & Flood). The k-th output of a stream depends only
// on the starting state, so draws can be addressed by index.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  // Uniform in [0, 1) from the top 53 bits.
  double next_unit();

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view text);

// ---------------------------------------------------------------------------
// Signal generators

struct Generator;

struct ConstantGenerator {
  Decimal value;
};
// start + slope * tick
struct RampGenerator {
  Decimal start;
  Decimal slope;
};
// mean + amplitude * sin(2*pi*(tick mod period)/period), rounded to 6 places
struct SineGenerator {
  Decimal mean;
  Decimal amplitude;
  std::int64_t period = 1;
};
// values[sample index], repeating the last value once exhausted
struct ListGenerator {
  std::vector<Decimal> values;
};
// inner + N(0, stddev^2) via Box-Muller over two SplitMix64 draws per sample,
// noise rounded to 6 places
struct NoisyGenerator {
  std::shared_ptr<const Generator> inner;
  Decimal stddev;
  std::uint64_t seed = 0;
};

struct Generator {
  std::variant<ConstantGenerator, RampGenerator, SineGenerator, ListGenerator,
               NoisyGenerator>
      spec;

  // `stream` is the per-sensor stream key (config seed ^ fnv1a64(sensor iri)).
  Decimal value_at(std::int64_t tick, std::int64_t sample_index,
                   std::uint64_t stream) const;
  void validate() const;  // throws ConfigError
};

// ---------------------------------------------------------------------------
// Scenario configuration

struct SensorSpec {
  enum class Placement { PositionedOn, LocatedIn };

  Iri iri;
  std::string measured_type;
  std::string unit;
  Placement placement = Placement::LocatedIn;
  Iri attached_to;  // HC3 when positioned on, E53 when located in
  Iri software;
  std::int64_t period = 1;
  std::int64_t phase = 0;
  Generator generator;
  std::string condition_state = "operational";
  std::optional<std::string> observed_event;  // label of the shared E5 node
  std::optional<std::string> quality;
};

struct StaticEntity {
  Iri iri;
  std::set<ClassId> types;
  std::optional<std::string> label;
  std::optional<std::string> action;  // activators: what the device does
};

struct StaticLink {
  Iri subject;
  PropertyId property;
  Iri object;
};

struct ScenarioConfig {
  PrefixMap prefixes;  // graph prefixes, defaults already included
  std::string start = "1970-01-01T00:00:00Z";
  std::int64_t tick_seconds = 1;
  std::int64_t duration = 0;
  std::uint64_t seed = 0;
  std::vector<StaticEntity> entities;
  std::vector<StaticLink> links;
  std::vector<SensorSpec> sensors;
  Iri decider;
  std::optional<std::string> decider_label;
  std::string rules_text;
};

// JSON scenario document; `base_dir` resolves "rulesFile". Throws ConfigError.
ScenarioConfig parse_scenario_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

// start + tick * tick_seconds, "YYYY-MM-DDThh:mm:ssZ".
std::string tick_timestamp(std::string_view start, std::int64_t tick_seconds,
                           std::int64_t tick);

// ---------------------------------------------------------------------------
// Event log

enum class EventKind {
  Measurement,
  Signal,
  Transmission,
  Decision,
  Activation,
  Actuation,
  Alert,
};

std::string_view to_string(EventKind kind);

using FieldValue = std::variant<std::string, std::int64_t, bool>;

struct EventRecord {
  std::int64_t tick = 0;
  std::uint64_t seq = 0;  // total order within a run
  EventKind kind = EventKind::Measurement;
  std::map<std::string, FieldValue> fields;

  // One JSON object, keys sorted, no whitespace, no trailing newline.
  std::string to_json() const;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// JSON Lines, LF-terminated. A run that aborted ends with an
// {"aborted":true,...} marker line.
std::string render_log(const std::vector<EventRecord>& log,
                       const std::optional<std::string>& abort_reason = {});

// ---------------------------------------------------------------------------
// Simulation

// Sensor -> measurement -> signal -> decider -> activation -> activator/actor,
// materialized as graph statements. Single-threaded and deterministic:
// sensors due at a tick run in IRI order, actuations precede alerts.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config,
                      std::shared_ptr<const Registry> registry = nullptr);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const ScenarioConfig& config() const { return config_; }
  const Graph& graph() const { return graph_; }
  const std::vector<EventRecord>& log() const { return log_; }
  const std::vector<Rule>& rules() const { return rules_; }
  // Swaps the decider's rule set mid-run. Unlike construction, targets are
  // only checked when a rule fires (decide throws ActionTargetMissing).
  void replace_rules(std::vector<Rule> rules);

  // Sensors with tick >= phase and (tick - phase) % period == 0, IRI order.
  std::vector<const SensorSpec*> schedule_due(std::int64_t tick) const;

  // New HC13 with L12 -> sensor, O24 -> observed E5, L17 -> E55 type node.
  Iri sample(const SensorSpec& sensor, std::int64_t tick);
  // New HC12 with (measurement L20 signal) and the encoded payload.
  SignalPayload make_signal(const Iri& measurement);
  // (signal HP12 decider).
  void transmit(const Iri& signal, const Iri& decider);
  // Runs every rule for the signal's measured type. When any fires, creates
  // one HC14 with (decider O13 act) and HP13/HP14 per fired action.
  std::optional<Iri> decide(const SignalPayload& signal);
  // Actuation records for HP13 objects, then alert records for HP14 objects.
  void execute_activation(const Iri& activation);

  void step(std::int64_t tick);
  // Runs ticks [next tick, until) and stops at config duration.
  void run(std::optional<std::int64_t> until = std::nullopt);

  std::int64_t current_tick() const { return tick_; }

 private:
  struct MeasurementInfo {
    const SensorSpec* sensor;
    std::int64_t tick;
    std::int64_t index;
    Decimal value;
  };

  void build_static_graph();
  void check_action_targets() const;
  Iri fresh(std::string_view kind, const SensorSpec& sensor,
            std::int64_t index) const;
  Iri ensure_type_node(const std::string& measured_type);
  Iri ensure_event_node(const SensorSpec& sensor);
  EventRecord& record(EventKind kind, std::int64_t tick);

  ScenarioConfig config_;
  Graph graph_;
  std::vector<Rule> rules_;
  std::vector<EventRecord> log_;
  std::int64_t tick_ = 0;
  std::map<Iri, MeasurementInfo> measurements_;
  std::map<Iri, SignalPayload> signals_;
  std::map<Iri, std::vector<std::pair<Iri, std::string>>> alert_channels_;
  std::map<std::string, std::vector<SignalPayload>> history_;
};

struct RunResult {
  Graph graph;
  std::vector<EventRecord> log;
  std::int64_t ticks = 0;            // ticks completed
  std::optional<std::string> error;  // set when a step aborted the run
};

// Static graph, then ticks 0..duration-1 (or ..until-1 when smaller).
// Throws ConfigError for invalid configurations; step errors abort the run
// and are reported in RunResult::error with the partial log.
RunResult run_scenario(const ScenarioConfig& config,
                       std::optional<std::int64_t> until = std::nullopt);

struct RunSummary {
  std::int64_t ticks = 0;
  std::size_t measurements = 0;
  std::size_t signals = 0;
  std::size_t activations = 0;
  std::size_t alerts = 0;
};

RunSummary summarize(const std::vector<EventRecord>& log, std::int64_t ticks);
// "ticks=N measurements=N signals=N activations=N alerts=N"
std::string format_summary(const RunSummary& s);

}  // namespace rhdt
