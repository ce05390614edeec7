#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rhdt/error.hpp"
#include "rhdt/runtime.hpp"
#include "rhdt/serialization.hpp"

namespace rhdt {
namespace {

const std::filesystem::path kScenarioDir = RHDT_SCENARIO_DIR;

ScenarioConfig pisano() { return load_scenario_file(kScenarioDir / "scenario.json"); }

Iri ex(const std::string& local) { return Iri("https://example.org/pistoia/" + local); }
const Iri kPulpit("https://www.wikidata.org/wiki/Q3925522");
const Iri kChurch("https://www.wikidata.org/wiki/Q1148335");

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ConfigError;
}

const SensorSpec& sensor(const Simulation& sim, const Iri& iri) {
  for (const auto& s : sim.config().sensors) {
    if (s.iri == iri) return s;
  }
  throw std::logic_error("no such sensor");
}

std::string field(const EventRecord& r, const std::string& key) {
  return std::get<std::string>(r.fields.at(key));
}

// ---------------------------------------------------------------------------
// Randomness and generators

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(fnv1a64(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(Generator, DeterministicShapes) {
  const auto d = [](const char* s) { return Decimal::from_string(s); };
  Generator ramp{RampGenerator{d("1"), d("0.5")}};
  EXPECT_EQ(ramp.value_at(4, 0, 0), d("3"));

  Generator sine{SineGenerator{d("50"), d("10"), 4}};
  EXPECT_EQ(sine.value_at(0, 0, 0), d("50"));
  EXPECT_EQ(sine.value_at(1, 0, 0), d("60"));
  EXPECT_EQ(sine.value_at(2, 0, 0), d("50"));
  EXPECT_EQ(sine.value_at(3, 0, 0), d("40"));
  EXPECT_EQ(sine.value_at(400001, 0, 0), d("60"));

  Generator list{ListGenerator{{d("40"), d("40"), d("75")}}};
  EXPECT_EQ(list.value_at(99, 2, 0), d("75"));
  EXPECT_EQ(list.value_at(99, 7, 0), d("75"));
  Generator constant{ConstantGenerator{d("0.002")}};
  EXPECT_EQ(constant.value_at(5, 5, 5), d("0.002"));
}

TEST(Generator, NoisyIsReproducibleAndRoughlyNormal) {
  Generator noisy{NoisyGenerator{
      std::make_shared<const Generator>(Generator{ConstantGenerator{Decimal(50)}}),
      Decimal(1), 42}};
  EXPECT_EQ(noisy.value_at(0, 0, 7), noisy.value_at(0, 0, 7));
  EXPECT_NE(noisy.value_at(0, 0, 7), noisy.value_at(0, 1, 7));
  EXPECT_NE(noisy.value_at(0, 0, 7), noisy.value_at(0, 0, 8));

  double sum = 0, sq = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double x = noisy.value_at(i, i, 7).to_double() - 50.0;
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.1);
  EXPECT_NEAR(sq / n, 1.0, 0.1);
}

TEST(Generator, Validation) {
  EXPECT_EQ(code_of([] { Generator{ListGenerator{}}.validate(); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { Generator{SineGenerator{Decimal(0), Decimal(1), 0}}.validate(); }),
            Errc::ConfigError);
  EXPECT_EQ(code_of([] {
              Generator{NoisyGenerator{
                            std::make_shared<const Generator>(
                                Generator{ConstantGenerator{Decimal(1)}}),
                            Decimal(-1), 0}}
                  .validate();
            }),
            Errc::ConfigError);
}

TEST(TickTimestamp, CrossesDaysAndLeapYears) {
  EXPECT_EQ(tick_timestamp("2024-02-28T23:50:00Z", 600, 2), "2024-02-29T00:10:00Z");
  EXPECT_EQ(tick_timestamp("2023-12-31T23:59:59Z", 1, 1), "2024-01-01T00:00:00Z");
  EXPECT_EQ(tick_timestamp("2024-03-01T00:00:00Z", 0, 9), "2024-03-01T00:00:00Z");
}

TEST(SignalPayload, CanonicalEncoding) {
  SignalPayload p;
  p.signal_iri = Iri("https://w3id.org/rhdto/run/sig/th/2");
  p.sensor_iri = Iri("https://example.org/th");
  p.timestamp = "2024-03-01T00:20:00Z";
  p.value = Decimal::from_string("75.0");
  p.unit = "%RH";
  p.measured_type = "humidity";
  EXPECT_EQ(p.encode(),
            "{\"measuredType\":\"humidity\",\"sensorId\":\"https://example.org/th\","
            "\"signalId\":\"https://w3id.org/rhdto/run/sig/th/2\","
            "\"timestamp\":\"2024-03-01T00:20:00Z\",\"unit\":\"%RH\",\"value\":\"75\"}");
  p.quality = "good";
  EXPECT_EQ(p.encode().rfind("{\"measuredType\":\"humidity\",\"quality\":\"good\",", 0), 0u);
  EXPECT_EQ(p.encode(), SignalPayload(p).encode());
}

TEST(EventLog, JsonLinesWithSortedKeys) {
  EventRecord r;
  r.tick = 2;
  r.seq = 13;
  r.kind = EventKind::Alert;
  r.fields = {{"channel", std::string("email")}, {"actor", std::string("x")}};
  EXPECT_EQ(r.to_json(),
            "{\"actor\":\"x\",\"channel\":\"email\",\"kind\":\"alert\",\"seq\":13,\"tick\":2}");
  EXPECT_EQ(render_log({r}), r.to_json() + "\n");
  EXPECT_EQ(render_log({r}, std::string("boom")),
            r.to_json() + "\n{\"aborted\":true,\"message\":\"boom\"}\n");
}

// ---------------------------------------------------------------------------
// Configuration

TEST(ScenarioConfig, LoadsPisano) {
  const auto cfg = pisano();
  EXPECT_EQ(cfg.duration, 3);
  ASSERT_EQ(cfg.sensors.size(), 2u);
  EXPECT_EQ(cfg.sensors[0].iri, ex("th-sensor"));
  EXPECT_EQ(cfg.sensors[0].placement, SensorSpec::Placement::LocatedIn);
  EXPECT_EQ(cfg.sensors[1].placement, SensorSpec::Placement::PositionedOn);
  EXPECT_EQ(cfg.decider, ex("monitoring-system"));
  EXPECT_NE(cfg.rules_text.find("RULE r1"), std::string::npos);
  EXPECT_TRUE(cfg.prefixes.contains("ex"));
  EXPECT_TRUE(cfg.prefixes.contains("run"));
}

std::string minimal_json(const std::string& sensor_extra, const std::string& rules) {
  return R"({"prefixes":{"ex":"https://example.org/"},"start":"2024-01-01T00:00:00Z",
  "tickSeconds":60,"duration":2,
  "entities":[{"iri":"ex:room","types":["E53"]},{"iri":"ex:sw","types":["D14"]},
              {"iri":"ex:office","types":["E39"]}],
  "sensors":[{"iri":"ex:s","measuredType":"t","unit":"C","locatedIn":"ex:room",
              "software":"ex:sw","generator":{"kind":"constant","value":1})" +
         sensor_extra + R"(}],
  "decider":{"iri":"ex:d","rules":")" + rules + R"("}})";
}

TEST(ScenarioConfig, MinimalDocumentRuns) {
  const auto cfg = parse_scenario_config(
      minimal_json("", R"(RULE r WHEN TYPE = \"t\" AND VALUE > 0 THEN ALERT ex:office VIA \"sms\")"));
  const auto result = run_scenario(cfg);
  EXPECT_FALSE(result.error);
  EXPECT_EQ(summarize(result.log, result.ticks).alerts, 1u);
}

TEST(ScenarioConfig, RejectsInvalidDocuments) {
  const std::string ok_rule = R"(RULE r WHEN TYPE = \"t\" AND VALUE > 0 THEN ALERT ex:office VIA \"sms\")";
  const std::vector<std::string> bad = {
      "{",
      "[]",
      minimal_json(R"(,"positionedOn":"ex:room")", ok_rule),
      minimal_json(R"(,"period":0)", ok_rule),
      minimal_json(R"(,"period":2,"phase":2)", ok_rule),
      minimal_json("", "RULE r WHEN"),
      minimal_json("", R"(RULE r WHEN TYPE = \"t\" AND VALUE > 0 THEN ACTIVATE ex:pump)"),
      minimal_json("", R"(RULE r WHEN TYPE = \"t\" AND VALUE > 0 THEN ACTIVATE ex:office)"),
      minimal_json(R"(,"generator":{"kind":"list","values":[]})", ok_rule),
      minimal_json(R"(,"generator":{"kind":"wave"})", ok_rule),
      minimal_json(R"(,"generator":{"kind":"constant","value":"1e3"})", ok_rule),
      minimal_json(R"(,"software":"ex:room")", ok_rule),
      minimal_json(R"(,"iri":"nope:s")", ok_rule),
  };
  for (const auto& doc : bad) {
    EXPECT_EQ(code_of([&] { Simulation sim(parse_scenario_config(doc)); }),
              Errc::ConfigError)
        << doc;
  }
}

// ---------------------------------------------------------------------------
// Pipeline steps

TEST(Schedule, Examples) {
  auto cfg = pisano();
  cfg.sensors[1].period = 3;
  cfg.sensors[1].phase = 0;
  Simulation sim(cfg);
  const auto at3 = sim.schedule_due(3);
  ASSERT_EQ(at3.size(), 2u);
  EXPECT_LT(at3[0]->iri, at3[1]->iri);
  const auto at1 = sim.schedule_due(1);
  ASSERT_EQ(at1.size(), 1u);
  EXPECT_EQ(at1[0]->iri, ex("th-sensor"));
}

TEST(Schedule, MatchesBruteForceFilter) {
  testing::Rng rng(51);
  auto cfg = testing::random_scenario(rng);
  const auto base = cfg.sensors.front();
  cfg.sensors.clear();
  for (int i = 0; i < 10; ++i) {
    auto s = base;
    s.iri = Iri("https://example.org/rand/z" + std::to_string(9 - i));
    s.period = std::uniform_int_distribution<std::int64_t>(1, 7)(rng);
    s.phase = std::uniform_int_distribution<std::int64_t>(0, s.period - 1)(rng);
    cfg.sensors.push_back(s);
  }
  Simulation sim(cfg);
  for (std::int64_t t = 0; t <= 100; ++t) {
    std::vector<Iri> expected;
    for (const auto& s : cfg.sensors) {
      bool due = false;
      for (std::int64_t k = s.phase; k <= t; k += s.period) due |= k == t;
      if (due) expected.push_back(s.iri);
    }
    std::sort(expected.begin(), expected.end());
    std::vector<Iri> got;
    for (const auto* s : sim.schedule_due(t)) got.push_back(s->iri);
    ASSERT_EQ(got, expected) << "tick " << t;
  }
}

TEST(Sample, AccelerometerMeasurement) {
  Simulation sim(pisano());
  const auto m = sim.sample(sensor(sim, ex("accelerometer")), 3);
  const auto& g = sim.graph();
  EXPECT_TRUE(g.has_type(m, "HC13"));
  EXPECT_EQ(objects_of(g, m, "L12"), std::vector<Object>{ex("accelerometer")});
  const auto observed = std::get<Iri>(objects_of(g, m, "O24").at(0));
  EXPECT_TRUE(g.has_type(observed, "E5"));
  EXPECT_EQ(g.node(observed).annotations.at("label").value, "Seismic movement of the pulpit");
  const auto type = std::get<Iri>(objects_of(g, m, "L17").at(0));
  EXPECT_TRUE(g.has_type(type, "E55"));
  EXPECT_EQ(g.node(type).annotations.at("label").value, "acceleration");
  ASSERT_EQ(sim.log().size(), 1u);
  EXPECT_EQ(sim.log()[0].kind, EventKind::Measurement);
  EXPECT_EQ(field(sim.log()[0], "value"), "0.002");
}

TEST(Sample, ListValuesAndErrors) {
  Simulation sim(pisano());
  const auto& th = sensor(sim, ex("th-sensor"));
  sim.sample(th, 0);
  sim.sample(th, 1);
  sim.sample(th, 2);
  EXPECT_EQ(field(sim.log().back(), "value"), "75");

  SensorSpec ghost = th;
  ghost.iri = ex("ghost");
  EXPECT_EQ(code_of([&] { sim.sample(ghost, 0); }), Errc::SensorNotInGraph);
}

TEST(MakeSignal, LinksAndPayload) {
  Simulation sim(pisano());
  const auto& th = sensor(sim, ex("th-sensor"));
  sim.sample(th, 0);
  sim.sample(th, 1);
  const auto m = sim.sample(th, 2);
  const auto p = sim.make_signal(m);
  EXPECT_EQ(p.value, Decimal(75));
  EXPECT_EQ(p.unit, "%RH");
  EXPECT_EQ(p.timestamp, "2024-03-01T00:20:00Z");
  const auto& g = sim.graph();
  EXPECT_EQ(objects_of(g, m, "L20"), std::vector<Object>{p.signal_iri});
  EXPECT_EQ(g.node(p.signal_iri).annotations.at("payload").value, p.encode());
  EXPECT_EQ(code_of([&] { sim.make_signal(kChurch); }), Errc::NotAMeasurement);
}

TEST(Transmit, DedupsStatementsButLogsEachCall) {
  Simulation sim(pisano());
  const auto m = sim.sample(sensor(sim, ex("th-sensor")), 0);
  const auto p = sim.make_signal(m);
  const auto before = sim.graph().statements().size();
  sim.transmit(p.signal_iri, ex("monitoring-system"));
  sim.transmit(p.signal_iri, ex("monitoring-system"));
  EXPECT_EQ(sim.graph().statements().size(), before + 1);
  EXPECT_EQ(std::count_if(sim.log().begin(), sim.log().end(),
                          [](const EventRecord& r) { return r.kind == EventKind::Transmission; }),
            2);
  EXPECT_EQ(code_of([&] { sim.transmit(p.signal_iri, ex("opd")); }), Errc::RangeViolation);
}

SignalPayload drive(Simulation& sim, std::int64_t tick) {
  const auto m = sim.sample(sensor(sim, ex("th-sensor")), tick);
  const auto p = sim.make_signal(m);
  sim.transmit(p.signal_iri, sim.config().decider);
  return p;
}

TEST(Decide, HumidityAboveThresholdAlertsOpd) {
  Simulation sim(pisano());
  EXPECT_FALSE(sim.decide(drive(sim, 0)));
  EXPECT_EQ(sim.log().back().kind, EventKind::Decision);
  EXPECT_FALSE(std::get<bool>(sim.log().back().fields.at("fired")));
  EXPECT_EQ(testing::count_typed(sim.graph(), "HC14"), 0u);
  EXPECT_FALSE(sim.decide(drive(sim, 1)));

  const auto act = sim.decide(drive(sim, 2));
  ASSERT_TRUE(act);
  const auto& g = sim.graph();
  EXPECT_TRUE(g.contains({ex("monitoring-system"), "O13", *act}));
  EXPECT_EQ(objects_of(g, *act, "HP14"), std::vector<Object>{ex("opd")});
  EXPECT_EQ(sim.log().back().kind, EventKind::Activation);
}

TEST(Decide, MissingTargetLeavesGraphUntouched) {
  Simulation sim(pisano());
  sim.replace_rules(parse_rules_or_throw(
      "RULE pump WHEN TYPE = \"humidity\" AND VALUE > 10 THEN ACTIVATE ex:pump"));
  const auto p = drive(sim, 0);
  const auto before = emit_graph(sim.graph());
  const auto log_size = sim.log().size();
  EXPECT_EQ(code_of([&] { sim.decide(p); }), Errc::ActionTargetMissing);
  EXPECT_EQ(emit_graph(sim.graph()), before);
  EXPECT_EQ(sim.log().size(), log_size);
}

TEST(ExecuteActivation, ActuationsPrecedeAlerts) {
  auto cfg = pisano();
  cfg.entities.push_back({ex("shutter"), {"HC11"}, std::nullopt, "close window shutter"});
  cfg.entities.push_back({ex("manual"), {"HC14"}, std::nullopt, std::nullopt});
  cfg.rules_text =
      "RULE r1 WHEN TYPE = \"humidity\" AND VALUE > 70 "
      "THEN ALERT ex:opd VIA \"email\", ACTIVATE ex:shutter\n";
  Simulation sim(cfg);
  sim.run();
  const auto& log = sim.log();
  ASSERT_GE(log.size(), 2u);
  const auto& actuation = log[log.size() - 2];
  const auto& alert = log.back();
  EXPECT_EQ(actuation.kind, EventKind::Actuation);
  EXPECT_EQ(field(actuation, "action"), "close window shutter");
  EXPECT_EQ(alert.kind, EventKind::Alert);
  EXPECT_EQ(field(alert, "actor"), ex("opd").str());
  EXPECT_EQ(field(alert, "channel"), "email");

  const auto n = log.size();
  sim.execute_activation(ex("manual"));
  EXPECT_EQ(sim.log().size(), n);
  EXPECT_EQ(code_of([&] { sim.execute_activation(kChurch); }), Errc::NotAnActivationEvent);
}

// ---------------------------------------------------------------------------
// Whole runs

TEST(RunScenario, PisanoGolden) {
  const auto result = run_scenario(pisano());
  ASSERT_FALSE(result.error);
  const auto& g = result.graph;
  EXPECT_TRUE(validate_graph(g).ok());

  for (const char* p : {"HP1", "P55", "HP15", "HP11", "L12", "O24", "L17", "L20", "HP12",
                        "O13", "HP14"}) {
    EXPECT_GE(testing::count_property(g, p), 1u) << p;
  }
  EXPECT_TRUE(g.contains({kPulpit, "P55", kChurch}));
  EXPECT_TRUE(g.contains({ex("th-sensor"), "P55", kChurch}));
  EXPECT_TRUE(g.contains({ex("accelerometer"), "HP15", kPulpit}));
  EXPECT_EQ(testing::count_property(g, "HP11"), 2u);

  EXPECT_EQ(testing::count_typed(g, "HC13"), 3u);
  EXPECT_EQ(testing::count_typed(g, "HC12"), 3u);
  EXPECT_EQ(testing::count_typed(g, "HC14"), 1u);
  // 3 measurements x (L12, O24, L17, L20) + 3 HP12 + O13 + HP14.
  EXPECT_EQ(testing::count_runtime_statements(g), 3u * 4 + 3 + 1 + 1);

  EXPECT_EQ(instances_of(g, "D8", true),
            (std::vector<Iri>{ex("accelerometer"), ex("th-sensor")}));
  EXPECT_TRUE(instances_of(g, "HC11", true).empty());

  const auto s = summarize(result.log, result.ticks);
  EXPECT_EQ(format_summary(s), "ticks=3 measurements=3 signals=3 activations=1 alerts=1");
}

TEST(RunScenario, ActivationChainReachesTheChurch) {
  const auto result = run_scenario(pisano());
  const auto acts = instances_of(result.graph, "HC14", false);
  ASSERT_EQ(acts.size(), 1u);
  const auto chain = provenance_chain(result.graph, acts[0]);
  ASSERT_EQ(chain.size(), 5u);
  const std::vector<std::string> props = {"O13", "HP12", "L20", "L12", "P55"};
  const std::vector<ClassId> types = {"HC14", "HC10", "HC12", "HC13", "HC9", "E53"};
  for (std::size_t i = 0; i < chain.size(); ++i) EXPECT_EQ(chain[i].property, props[i]);
  // Node sequence along the walk.
  std::vector<Iri> nodes = {acts[0]};
  nodes.push_back(chain[0].subject);
  nodes.push_back(chain[1].subject);
  nodes.push_back(chain[2].subject);
  nodes.push_back(std::get<Iri>(chain[3].object));
  nodes.push_back(std::get<Iri>(chain[4].object));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_TRUE(result.graph.has_type(nodes[i], types[i])) << i;
  }
  EXPECT_EQ(nodes.back(), kChurch);
}

TEST(RunScenario, AccelerometerChainEndsAtThePulpit) {
  auto cfg = pisano();
  cfg.duration = 4;
  const auto result = run_scenario(cfg);
  const auto m = Iri(std::string(ns::kRun) + "m/accelerometer/0");
  const auto chain = provenance_chain(result.graph, m);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[1].property, "HP15");
  EXPECT_EQ(std::get<Iri>(chain[1].object), kPulpit);
}

TEST(RunScenario, DurationZeroAndUntil) {
  auto cfg = pisano();
  const auto until0 = run_scenario(cfg, 0);
  EXPECT_TRUE(until0.log.empty());
  EXPECT_EQ(testing::count_runtime_statements(until0.graph), 0u);
  cfg.duration = 0;
  const auto zero = run_scenario(cfg);
  EXPECT_TRUE(zero.log.empty());
  EXPECT_EQ(emit_graph(zero.graph), emit_graph(until0.graph));
  EXPECT_EQ(run_scenario(pisano(), 2).ticks, 2);
  EXPECT_EQ(run_scenario(pisano(), 50).ticks, 3);
}

TEST(RunScenario, StepErrorsAbortWithPartialLog) {
  Simulation sim(pisano());
  sim.replace_rules(parse_rules_or_throw(
      "RULE pump WHEN TYPE = \"humidity\" AND VALUE > 50 THEN ACTIVATE ex:pump"));
  EXPECT_EQ(code_of([&] { sim.run(); }), Errc::ActionTargetMissing);
  EXPECT_EQ(sim.current_tick(), 2);
  EXPECT_EQ(summarize(sim.log(), sim.current_tick()).measurements, 3u);
}

TEST(RunScenario, Deterministic) {
  for (const char* file : {"scenario.json", "scenario-noisy.json"}) {
    const auto cfg = load_scenario_file(kScenarioDir / file);
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(load_scenario_file(kScenarioDir / file));
    EXPECT_EQ(emit_graph(a.graph), emit_graph(b.graph)) << file;
    EXPECT_EQ(render_log(a.log), render_log(b.log)) << file;
  }
}

TEST(RunScenario, EmittedGraphValidatesAfterReparse) {
  const auto result = run_scenario(load_scenario_file(kScenarioDir / "scenario-noisy.json"));
  const auto text = emit_graph(result.graph);
  const auto parsed = parse_graph(text, result.graph.registry_ptr());
  ASSERT_TRUE(parsed.ok());
  EXPECT_TRUE(graph_equal(*parsed.graph, result.graph));
  EXPECT_EQ(emit_graph(*parsed.graph), text);
}

TEST(RunScenarioProperty, ProvenanceIsConserved) {
  testing::Rng rng(52);
  for (int i = 0; i < 50; ++i) {
    const auto cfg = testing::random_scenario(rng);
    const auto r = run_scenario(cfg);
    ASSERT_FALSE(r.error) << *r.error;
    const auto& g = r.graph;
    const auto hc12 = testing::count_typed(g, "HC12");
    EXPECT_EQ(hc12, testing::count_property(g, "L20"));
    EXPECT_EQ(hc12, testing::count_property(g, "HP12"));
    const auto hc13 = testing::count_typed(g, "HC13");
    EXPECT_EQ(hc13, testing::count_property(g, "L12"));
    EXPECT_EQ(hc13, testing::count_property(g, "O24"));
    EXPECT_EQ(hc13, testing::count_property(g, "L17"));
    for (const auto& act : instances_of(g, "HC14", false)) {
      std::size_t in_o13 = 0, out_actions = 0;
      for (const auto& s : g.statements()) {
        const auto* o = std::get_if<Iri>(&s.object);
        if (s.property == "O13" && o && *o == act) ++in_o13;
        if (s.subject == act && (s.property == "HP13" || s.property == "HP14")) ++out_actions;
      }
      EXPECT_EQ(in_o13, 1u);
      EXPECT_GE(out_actions, 1u);
    }
    EXPECT_TRUE(validate_graph(g).ok());
  }
}

// One sensor, one rule: activations equal the oracle count on the values the
// run actually produced.
TEST(RunScenarioProperty, ActivationsMatchRuleOracle) {
  testing::Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    auto cfg = testing::random_scenario(rng);
    cfg.sensors.resize(1);
    cfg.duration = 30;
    const auto type = cfg.sensors[0].measured_type;
    auto rules = parse_rules_or_throw(cfg.rules_text);
    auto rule = rules[0];
    rule.measured_type = type;
    std::ostringstream text;
    text << "RULE only WHEN TYPE = \"" << type << "\" AND VALUE "
         << to_string(rule.comparator) << ' ' << rule.threshold.to_string() << " FOR "
         << rule.sustain << " SAMPLES MODE "
         << (rule.mode == TriggerMode::Every ? "EVERY" : "ON_RISE")
         << " THEN ALERT ex:office0 VIA \"email\"";
    cfg.rules_text = text.str();

    const auto r = run_scenario(cfg);
    std::vector<Decimal> values;
    for (const auto& rec : r.log) {
      if (rec.kind == EventKind::Measurement) {
        values.push_back(Decimal::from_string(field(rec, "value")));
      }
    }
    const auto oracle = testing::scan_firings(rule.comparator, rule.threshold, rule.sustain,
                                              values);
    const auto expected = rule.mode == TriggerMode::Every ? oracle.every.size()
                                                          : oracle.on_rise.size();
    ASSERT_EQ(summarize(r.log, r.ticks).activations, expected) << cfg.rules_text;
  }
}

}  // namespace
}  // namespace rhdt
