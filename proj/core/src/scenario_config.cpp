#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rhdt/error.hpp"
#include "rhdt/runtime.hpp"

namespace rhdt {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(Errc::ConfigError, message);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) config_error(where + ": missing \"" + key + "\"");
  return *it;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) config_error(where + ": expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) config_error(where + ": expected an integer");
  return v.get<std::int64_t>();
}

Decimal get_decimal(const json& v, const std::string& where) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number()) {
    text = v.dump();
  } else {
    config_error(where + ": expected a decimal");
  }
  auto d = Decimal::parse(text);
  if (!d) config_error(where + ": '" + text + "' is not a plain decimal");
  return *d;
}

std::uint64_t get_seed(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const auto s = v.get<std::string>();
      const auto r = std::stoull(s, &used, 0);
      if (used == s.size()) return r;
    } catch (const std::exception&) {
    }
  }
  config_error(where + ": expected a 64-bit unsigned seed");
}

Iri get_iri(const json& v, const PrefixMap& prefixes, const std::string& where) {
  const auto text = get_string(v, where);
  auto iri = prefixes.resolve(text);
  if (!iri) config_error(where + ": cannot resolve IRI '" + text + "'");
  return *iri;
}

std::optional<std::string> opt_string(const json& obj, const char* key,
                                      const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return get_string(*it, where + "." + key);
}

Generator parse_generator(const json& v, const std::string& where) {
  if (!v.is_object()) config_error(where + ": expected an object");
  const auto kind = get_string(require(v, "kind", where), where + ".kind");
  Generator g;
  if (kind == "constant") {
    g.spec = ConstantGenerator{get_decimal(require(v, "value", where), where + ".value")};
  } else if (kind == "ramp") {
    g.spec = RampGenerator{get_decimal(require(v, "start", where), where + ".start"),
                           get_decimal(require(v, "slope", where), where + ".slope")};
  } else if (kind == "sine") {
    g.spec = SineGenerator{
        get_decimal(require(v, "mean", where), where + ".mean"),
        get_decimal(require(v, "amplitude", where), where + ".amplitude"),
        get_int(require(v, "period", where), where + ".period")};
  } else if (kind == "list") {
    const auto& values = require(v, "values", where);
    if (!values.is_array()) config_error(where + ".values: expected an array");
    ListGenerator list;
    for (std::size_t i = 0; i < values.size(); ++i) {
      list.values.push_back(
          get_decimal(values[i], where + ".values[" + std::to_string(i) + "]"));
    }
    g.spec = std::move(list);
  } else if (kind == "noisy") {
    NoisyGenerator noisy;
    noisy.inner = std::make_shared<const Generator>(
        parse_generator(require(v, "inner", where), where + ".inner"));
    noisy.stddev = get_decimal(require(v, "stddev", where), where + ".stddev");
    noisy.seed = get_seed(require(v, "seed", where), where + ".seed");
    g.spec = std::move(noisy);
  } else {
    config_error(where + ": unknown generator kind '" + kind + "'");
  }
  g.validate();
  return g;
}

std::chrono::sys_seconds parse_start(std::string_view text) {
  static const std::regex re(R"(^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})Z$)");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, re)) {
    config_error("start must look like YYYY-MM-DDThh:mm:ssZ, got '" +
                 std::string(text) + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{std::stoi(m[1])},
                           month{static_cast<unsigned>(std::stoi(m[2]))},
                           day{static_cast<unsigned>(std::stoi(m[3]))}};
  const int hh = std::stoi(m[4]);
  const int mm = std::stoi(m[5]);
  const int ss = std::stoi(m[6]);
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59) {
    config_error("start is not a valid date-time: '" + std::string(text) + "'");
  }
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

}  // namespace

std::string tick_timestamp(std::string_view start, std::int64_t tick_seconds,
                           std::int64_t tick) {
  using namespace std::chrono;
  const sys_seconds t = parse_start(start) + seconds{tick * tick_seconds};
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

ScenarioConfig parse_scenario_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("scenario must be a JSON object");

  ScenarioConfig cfg;
  cfg.prefixes = PrefixMap::defaults();
  cfg.prefixes.declare("run", std::string(ns::kRun));
  cfg.prefixes.declare("rht", std::string(ns::kVocab));
  if (const auto it = doc.find("prefixes"); it != doc.end()) {
    if (!it->is_object()) config_error("prefixes: expected an object");
    for (const auto& [name, iri] : it->items()) {
      try {
        cfg.prefixes.declare(name, get_string(iri, "prefixes." + name));
      } catch (const Error& e) {
        config_error(std::string("prefixes.") + name + ": " + e.what());
      }
    }
  }
  const auto& prefixes = cfg.prefixes;

  cfg.start = get_string(require(doc, "start", "scenario"), "start");
  parse_start(cfg.start);
  cfg.tick_seconds = get_int(require(doc, "tickSeconds", "scenario"), "tickSeconds");
  if (cfg.tick_seconds < 0) config_error("tickSeconds must be >= 0");
  cfg.duration = get_int(require(doc, "duration", "scenario"), "duration");
  if (cfg.duration < 0) config_error("duration must be >= 0");
  if (const auto it = doc.find("seed"); it != doc.end()) {
    cfg.seed = get_seed(*it, "seed");
  }

  if (const auto it = doc.find("entities"); it != doc.end()) {
    if (!it->is_array()) config_error("entities: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& e = (*it)[i];
      const auto where = "entities[" + std::to_string(i) + "]";
      if (!e.is_object()) config_error(where + ": expected an object");
      StaticEntity entity;
      entity.iri = get_iri(require(e, "iri", where), prefixes, where + ".iri");
      const auto& types = require(e, "types", where);
      if (!types.is_array() || types.empty()) {
        config_error(where + ".types: expected a non-empty array");
      }
      for (const auto& t : types) entity.types.insert(get_string(t, where + ".types"));
      entity.label = opt_string(e, "label", where);
      entity.action = opt_string(e, "action", where);
      cfg.entities.push_back(std::move(entity));
    }
  }

  if (const auto it = doc.find("links"); it != doc.end()) {
    if (!it->is_array()) config_error("links: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& l = (*it)[i];
      const auto where = "links[" + std::to_string(i) + "]";
      if (!l.is_object()) config_error(where + ": expected an object");
      cfg.links.push_back(
          {get_iri(require(l, "subject", where), prefixes, where + ".subject"),
           get_string(require(l, "property", where), where + ".property"),
           get_iri(require(l, "object", where), prefixes, where + ".object")});
    }
  }

  const auto& sensors = require(doc, "sensors", "scenario");
  if (!sensors.is_array()) config_error("sensors: expected an array");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const auto& s = sensors[i];
    const auto where = "sensors[" + std::to_string(i) + "]";
    if (!s.is_object()) config_error(where + ": expected an object");
    SensorSpec spec;
    spec.iri = get_iri(require(s, "iri", where), prefixes, where + ".iri");
    spec.measured_type = get_string(require(s, "measuredType", where), where + ".measuredType");
    spec.unit = get_string(require(s, "unit", where), where + ".unit");
    const bool on = s.contains("positionedOn");
    const bool in = s.contains("locatedIn");
    if (on == in) {
      config_error(where + ": exactly one of positionedOn / locatedIn is required");
    }
    spec.placement = on ? SensorSpec::Placement::PositionedOn
                        : SensorSpec::Placement::LocatedIn;
    spec.attached_to = get_iri(s.at(on ? "positionedOn" : "locatedIn"), prefixes,
                               where + (on ? ".positionedOn" : ".locatedIn"));
    spec.software = get_iri(require(s, "software", where), prefixes, where + ".software");
    if (const auto p = s.find("period"); p != s.end()) {
      spec.period = get_int(*p, where + ".period");
    }
    if (const auto p = s.find("phase"); p != s.end()) {
      spec.phase = get_int(*p, where + ".phase");
    }
    if (spec.period < 1) config_error(where + ".period must be >= 1");
    if (spec.phase < 0 || spec.phase >= spec.period) {
      config_error(where + ".phase must satisfy 0 <= phase < period");
    }
    spec.generator = parse_generator(require(s, "generator", where), where + ".generator");
    if (auto cs = opt_string(s, "conditionState", where)) spec.condition_state = *cs;
    spec.observed_event = opt_string(s, "observedEvent", where);
    spec.quality = opt_string(s, "quality", where);
    cfg.sensors.push_back(std::move(spec));
  }

  const auto& decider = require(doc, "decider", "scenario");
  if (!decider.is_object()) config_error("decider: expected an object");
  cfg.decider = get_iri(require(decider, "iri", "decider"), prefixes, "decider.iri");
  cfg.decider_label = opt_string(decider, "label", "decider");
  const bool inline_rules = decider.contains("rules");
  const bool file_rules = decider.contains("rulesFile");
  if (inline_rules == file_rules) {
    config_error("decider: exactly one of rules / rulesFile is required");
  }
  if (inline_rules) {
    cfg.rules_text = get_string(decider.at("rules"), "decider.rules");
  } else {
    const auto path = base_dir / get_string(decider.at("rulesFile"), "decider.rulesFile");
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot read rules file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg.rules_text = ss.str();
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read scenario " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_config(ss.str(), path.parent_path());
}

}  // namespace rhdt
