#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rhdt/decimal.hpp"
#include "rhdt/diagnostic.hpp"
#include "rhdt/signal.hpp"

namespace rhdt {

// Decider rule language:
//
//   RULE <id> WHEN TYPE = "<measured type>" AND VALUE <cmp> <number>
//        [FOR <n> SAMPLES] [MODE ON_RISE|EVERY]
//        THEN <action> {, <action>}
//   action := ACTIVATE <iri> | ALERT <iri> VIA "<channel>"
//
// <cmp> is one of < <= > >= = !=. '#' starts a comment.

inline constexpr std::string_view kRulesFileExtension = ".rules";

enum class Comparator { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };
enum class TriggerMode { OnRise, Every };

std::string_view to_string(Comparator c);
std::string_view to_string(TriggerMode m);
bool compare(const Decimal& value, Comparator c, const Decimal& threshold);

struct Action {
  enum class Kind { Activate, Alert };
  Kind kind = Kind::Alert;
  std::string target;   // IRI term as written: CURIE or <absolute>
  std::string channel;  // ALERT only

  friend bool operator==(const Action&, const Action&) = default;
};

struct Rule {
  std::string id;
  std::string measured_type;
  Comparator comparator = Comparator::Greater;
  Decimal threshold;
  int sustain = 1;  // consecutive samples required
  TriggerMode mode = TriggerMode::OnRise;
  std::vector<Action> actions;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleParseResult {
  std::vector<Rule> rules;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

RuleParseResult parse_rules(std::string_view text);
// Throws Error(RuleSyntax | DuplicateRuleId) with the first diagnostic.
std::vector<Rule> parse_rules_or_throw(std::string_view text);

struct Decision {
  bool fired = false;
  std::string rule_id;
  std::vector<Action> actions;  // empty unless fired
};

// `window` is the signal history for the rule's measured type, newest last.
// Signals of other types are ignored. The condition holds at a state when the
// last `sustain` samples all satisfy the comparator. EVERY fires whenever it
// holds; ON_RISE fires when it holds now and did not hold one sample earlier,
// so ON_RISE needs the last sustain+1 samples to see the previous state.
// An empty window never fires.
Decision evaluate_rule(const Rule& rule, std::span<const SignalPayload> window);

}  // namespace rhdt
