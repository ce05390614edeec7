#include <algorithm>
#include <cctype>

#include "rhdt/error.hpp"
#include "rhdt/runtime.hpp"

namespace rhdt {

namespace {

std::string slug(std::string_view text) {
  std::string out;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "unnamed" : out;
}

std::shared_ptr<const Registry> seed_registry() {
  static const auto seed = std::make_shared<const Registry>(Registry::load_seed());
  return seed;
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error(Errc::ConfigError, message);
}

Literal any_uri(const Iri& iri) { return {iri.str(), LiteralKind::AnyUri}; }

}  // namespace

Simulation::Simulation(ScenarioConfig config,
                       std::shared_ptr<const Registry> registry)
    : config_(std::move(config)),
      graph_(registry ? std::move(registry) : seed_registry(), config_.prefixes) {
  if (config_.duration < 0) config_error("duration must be >= 0");
  for (const auto& s : config_.sensors) s.generator.validate();
  try {
    rules_ = parse_rules_or_throw(config_.rules_text);
  } catch (const Error& e) {
    config_error(std::string("rules: ") + e.what());
  }
  build_static_graph();
  check_action_targets();
}

void Simulation::build_static_graph() {
  auto& g = graph_;
  try {
    for (const auto& e : config_.entities) {
      for (const auto& t : e.types) {
        if (!g.registry().has_class(t)) {
          config_error("entity " + e.iri.str() + ": unknown class '" + t + "'");
        }
      }
      g.add_entity(e.iri, e.types);
      if (e.label) g.set_annotation(e.iri, annotation::kLabel, Literal::string(*e.label));
      if (e.action) g.set_annotation(e.iri, annotation::kAction, Literal::string(*e.action));
    }

    if (g.has_node(config_.decider)) {
      config_error("decider " + config_.decider.str() + " is also listed as an entity");
    }
    g.add_entity(config_.decider, {"HC10"});
    if (config_.decider_label) {
      g.set_annotation(config_.decider, annotation::kLabel,
                       Literal::string(*config_.decider_label));
    }

    std::set<std::string> local_names;
    for (const auto& s : config_.sensors) {
      if (g.has_node(s.iri)) {
        config_error("sensor " + s.iri.str() + " is defined twice");
      }
      const auto local = local_name(s.iri);
      if (local.empty() || !is_valid_curie_local(local) ||
          !local_names.insert(local).second) {
        config_error("sensor " + s.iri.str() +
                     " needs a distinct, CURIE-safe local name");
      }
      const auto& target = s.attached_to;
      const bool on = s.placement == SensorSpec::Placement::PositionedOn;
      if (!g.has_type(target, on ? "HC3" : "E53")) {
        config_error("sensor " + s.iri.str() + ": " + target.str() +
                     (on ? " must be defined as HC3" : " must be defined as E53"));
      }
      if (!g.has_type(s.software, "D14")) {
        config_error("sensor " + s.iri.str() + ": software " + s.software.str() +
                     " must be defined as D14");
      }
      g.add_entity(s.iri, {"HC9"});
      g.set_annotation(s.iri, annotation::kConditionState,
                       Literal::string(s.condition_state));
      g.add_statement({s.iri, "HP11", s.software});
      g.add_statement({s.iri, on ? "HP15" : "P55", target});
    }

    for (const auto& l : config_.links) g.add_statement({l.subject, l.property, l.object});
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    config_error(e.what());
  }
}

void Simulation::check_action_targets() const {
  for (const auto& rule : rules_) {
    for (const auto& a : rule.actions) {
      const auto iri = config_.prefixes.resolve(a.target);
      const bool activate = a.kind == Action::Kind::Activate;
      if (!iri || !graph_.has_type(*iri, activate ? "HC11" : "E39")) {
        config_error("rule " + rule.id + ": " + (activate ? "activator " : "actor ") +
                     a.target + " is not defined as " + (activate ? "HC11" : "E39"));
      }
    }
  }
}

std::vector<const SensorSpec*> Simulation::schedule_due(std::int64_t tick) const {
  std::vector<const SensorSpec*> due;
  for (const auto& s : config_.sensors) {
    if (tick >= s.phase && (tick - s.phase) % s.period == 0) due.push_back(&s);
  }
  std::sort(due.begin(), due.end(),
            [](const SensorSpec* a, const SensorSpec* b) { return a->iri < b->iri; });
  return due;
}

Iri Simulation::fresh(std::string_view kind, const SensorSpec& sensor,
                      std::int64_t index) const {
  return Iri(std::string(ns::kRun) + std::string(kind) + "/" +
             local_name(sensor.iri) + "/" + std::to_string(index));
}

Iri Simulation::ensure_type_node(const std::string& measured_type) {
  Iri iri(std::string(ns::kRun) + "type/" + slug(measured_type));
  if (!graph_.has_node(iri)) {
    graph_.add_entity(iri, {"E55"});
    graph_.set_annotation(iri, annotation::kLabel, Literal::string(measured_type));
  }
  return iri;
}

Iri Simulation::ensure_event_node(const SensorSpec& sensor) {
  Iri iri(std::string(ns::kRun) + "event/" + slug(sensor.measured_type));
  if (!graph_.has_node(iri)) {
    graph_.add_entity(iri, {"E5"});
    graph_.set_annotation(
        iri, annotation::kLabel,
        Literal::string(sensor.observed_event.value_or(sensor.measured_type + " variation")));
  }
  return iri;
}

EventRecord& Simulation::record(EventKind kind, std::int64_t tick) {
  EventRecord r;
  r.tick = tick;
  r.seq = log_.size();
  r.kind = kind;
  log_.push_back(std::move(r));
  return log_.back();
}

Iri Simulation::sample(const SensorSpec& sensor, std::int64_t tick) {
  if (!graph_.has_type(sensor.iri, "HC9")) {
    throw Error(Errc::SensorNotInGraph, "sensor " + sensor.iri.str() + " is not in the graph");
  }
  const std::int64_t index = (tick - sensor.phase) / sensor.period;
  const std::uint64_t stream = config_.seed ^ fnv1a64(sensor.iri.str());
  const Decimal value = sensor.generator.value_at(tick, index, stream);

  const Iri m = fresh("m", sensor, index);
  const Iri observed = ensure_event_node(sensor);
  const Iri type = ensure_type_node(sensor.measured_type);
  graph_.add_entity(m, {"HC13"});
  graph_.add_statement({m, "L12", sensor.iri});
  graph_.add_statement({m, "O24", observed});
  graph_.add_statement({m, "L17", type});
  measurements_.insert_or_assign(m, MeasurementInfo{&sensor, tick, index, value});

  auto& r = record(EventKind::Measurement, tick);
  r.fields = {{"measurement", m.str()},
              {"sensor", sensor.iri.str()},
              {"measuredType", sensor.measured_type},
              {"unit", sensor.unit},
              {"value", value.to_string()},
              {"timestamp", tick_timestamp(config_.start, config_.tick_seconds, tick)}};
  return m;
}

SignalPayload Simulation::make_signal(const Iri& measurement) {
  const auto it = measurements_.find(measurement);
  if (!graph_.has_type(measurement, "HC13") || it == measurements_.end()) {
    throw Error(Errc::NotAMeasurement,
                measurement.str() + " is not a measurement taken in this run");
  }
  const auto& info = it->second;
  const auto& sensor = *info.sensor;

  SignalPayload p;
  p.signal_iri = fresh("sig", sensor, info.index);
  p.sensor_iri = sensor.iri;
  p.timestamp = tick_timestamp(config_.start, config_.tick_seconds, info.tick);
  p.value = info.value;
  p.unit = sensor.unit;
  p.measured_type = sensor.measured_type;
  p.quality = sensor.quality;

  graph_.add_entity(p.signal_iri, {"HC12"});
  graph_.add_statement({measurement, "L20", p.signal_iri});
  const auto encoded = p.encode();
  graph_.set_annotation(p.signal_iri, annotation::kPayload, Literal::string(encoded));
  signals_.insert_or_assign(p.signal_iri, p);

  auto& r = record(EventKind::Signal, info.tick);
  r.fields = {{"signal", p.signal_iri.str()},
              {"measurement", measurement.str()},
              {"payload", encoded}};
  return p;
}

void Simulation::replace_rules(std::vector<Rule> rules) { rules_ = std::move(rules); }

void Simulation::transmit(const Iri& signal, const Iri& decider) {
  graph_.add_statement({signal, "HP12", decider});
  auto& r = record(EventKind::Transmission, tick_);
  r.fields = {{"signal", signal.str()}, {"decider", decider.str()}};
}

std::optional<Iri> Simulation::decide(const SignalPayload& signal) {
  const Iri& decider = config_.decider;
  std::size_t keep = 1;
  for (const auto& rule : rules_) {
    if (rule.measured_type == signal.measured_type) {
      keep = std::max(keep, static_cast<std::size_t>(rule.sustain) + 1);
    }
  }
  // Committed only after every target resolves.
  auto history = history_[signal.measured_type];
  history.push_back(signal);
  if (history.size() > keep) history.erase(history.begin());

  std::vector<std::string> fired;
  std::vector<Action> actions;
  for (const auto& rule : rules_) {
    if (rule.measured_type != signal.measured_type) continue;
    auto d = evaluate_rule(rule, history);
    if (!d.fired) continue;
    fired.push_back(d.rule_id);
    actions.insert(actions.end(), d.actions.begin(), d.actions.end());
  }

  // Resolve every target before writing, so a bad target leaves the graph
  // untouched.
  std::vector<std::pair<Iri, const Action*>> targets;
  for (const auto& a : actions) {
    const auto iri = config_.prefixes.resolve(a.target);
    const bool activate = a.kind == Action::Kind::Activate;
    if (!iri || !graph_.has_type(*iri, activate ? "HC11" : "E39")) {
      throw Error(Errc::ActionTargetMissing,
                  a.target + " is not a defined " + (activate ? "activator" : "actor"));
    }
    targets.emplace_back(*iri, &a);
  }

  history_[signal.measured_type] = std::move(history);

  std::string fired_ids;
  for (const auto& id : fired) fired_ids += (fired_ids.empty() ? "" : ",") + id;
  auto& decision = record(EventKind::Decision, tick_);
  decision.fields = {{"decider", decider.str()},
                     {"signal", signal.signal_iri.str()},
                     {"fired", !fired.empty()},
                     {"rules", fired_ids}};
  if (fired.empty()) return std::nullopt;

  // run:act/{sensor}/{index}, sharing the index of the signal it answers.
  Iri act(std::string(ns::kRun) + "act/" + local_name(signal.sensor_iri) + "/" +
          local_name(signal.signal_iri));

  graph_.add_entity(act, {"HC14"});
  graph_.set_annotation(act, annotation::kInResponseTo, any_uri(signal.signal_iri));
  graph_.add_statement({decider, "O13", act});
  auto& channels = alert_channels_[act];
  for (const auto& [iri, action] : targets) {
    if (action->kind == Action::Kind::Activate) {
      graph_.add_statement({act, "HP13", iri});
    } else {
      graph_.add_statement({act, "HP14", iri});
      channels.emplace_back(iri, action->channel);
    }
  }

  auto& r = record(EventKind::Activation, tick_);
  r.fields = {{"activation", act.str()},
              {"decider", decider.str()},
              {"signal", signal.signal_iri.str()},
              {"rules", fired_ids}};
  return act;
}

void Simulation::execute_activation(const Iri& activation) {
  if (!graph_.has_type(activation, "HC14")) {
    throw Error(Errc::NotAnActivationEvent,
                activation.str() + " is not an activation event");
  }
  std::vector<Iri> activators;
  std::vector<Iri> actors;
  for (const auto& s : graph_.statements()) {
    if (s.subject != activation) continue;
    if (s.property == "HP13") activators.push_back(std::get<Iri>(s.object));
    if (s.property == "HP14") actors.push_back(std::get<Iri>(s.object));
  }
  for (const auto& a : activators) {
    const auto& node = graph_.node(a);
    const auto action = node.annotations.find(annotation::kAction);
    auto& r = record(EventKind::Actuation, tick_);
    r.fields = {{"activation", activation.str()},
                {"activator", a.str()},
                {"action", action == node.annotations.end() ? std::string()
                                                            : action->second.value}};
  }
  const auto channels = alert_channels_.find(activation);
  for (const auto& actor : actors) {
    std::string channel;
    if (channels != alert_channels_.end()) {
      for (const auto& [iri, ch] : channels->second) {
        if (iri == actor) {
          channel += (channel.empty() ? "" : ",") + ch;
        }
      }
    }
    auto& r = record(EventKind::Alert, tick_);
    r.fields = {{"activation", activation.str()},
                {"actor", actor.str()},
                {"channel", channel}};
  }
}

void Simulation::step(std::int64_t tick) {
  tick_ = tick;
  for (const auto* sensor : schedule_due(tick)) {
    const Iri m = sample(*sensor, tick);
    const SignalPayload p = make_signal(m);
    transmit(p.signal_iri, config_.decider);
    if (const auto act = decide(p)) execute_activation(*act);
  }
}

void Simulation::run(std::optional<std::int64_t> until) {
  const std::int64_t end =
      until ? std::min(*until, config_.duration) : config_.duration;
  for (std::int64_t t = tick_; t < end; ++t) {
    step(t);
    tick_ = t + 1;
  }
}

RunResult run_scenario(const ScenarioConfig& config,
                       std::optional<std::int64_t> until) {
  Simulation sim(config);
  std::optional<std::string> error;
  try {
    sim.run(until);
  } catch (const Error& e) {
    error = std::string(to_string(e.code())) + " at tick " +
            std::to_string(sim.current_tick()) + ": " + e.what();
  }
  return RunResult{sim.graph(), sim.log(), sim.current_tick(), std::move(error)};
}

}  // namespace rhdt
