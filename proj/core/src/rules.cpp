#include "rhdt/rules.hpp"

#include <cctype>
#include <set>

#include "rhdt/error.hpp"
#include "rhdt/iri.hpp"

namespace rhdt {

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::Less: return "<";
    case Comparator::LessEqual: return "<=";
    case Comparator::Greater: return ">";
    case Comparator::GreaterEqual: return ">=";
    case Comparator::Equal: return "=";
    case Comparator::NotEqual: return "!=";
  }
  return "?";
}

std::string_view to_string(TriggerMode m) {
  return m == TriggerMode::OnRise ? "ON_RISE" : "EVERY";
}

bool compare(const Decimal& value, Comparator c, const Decimal& threshold) {
  switch (c) {
    case Comparator::Less: return value < threshold;
    case Comparator::LessEqual: return value <= threshold;
    case Comparator::Greater: return value > threshold;
    case Comparator::GreaterEqual: return value >= threshold;
    case Comparator::Equal: return value == threshold;
    case Comparator::NotEqual: return value != threshold;
  }
  return false;
}

namespace {

enum class Tok { Word, Iri, String, Number, Cmp, Comma, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    t.column = column_;
    if (i_ >= src_.size()) return t;
    const char c = src_[i_];
    const auto uc = static_cast<unsigned char>(c);
    if (c == ',') {
      advance();
      t.kind = Tok::Comma;
    } else if (c == '"') {
      lex_string(t);
    } else if (c == '<' && i_ + 1 < src_.size() &&
               std::isalpha(static_cast<unsigned char>(src_[i_ + 1])) &&
               iriref_end() != std::string_view::npos) {
      const auto end = iriref_end();
      while (i_ <= end) t.text.push_back(take());
      t.kind = Tok::Iri;
    } else if (c == '<' || c == '>' || c == '=' || c == '!') {
      t.text.push_back(take());
      if (i_ < src_.size() && src_[i_] == '=') t.text.push_back(take());
      if (t.text == "!") {
        t.kind = Tok::Bad;
        t.text = "expected '!='";
      } else {
        t.kind = Tok::Cmp;
      }
    } else if (std::isdigit(uc) || c == '+' || c == '-' || c == '.') {
      while (i_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '.' || src_[i_] == '+' || src_[i_] == '-')) {
        t.text.push_back(take());
      }
      t.kind = Tok::Number;
    } else if (std::isalpha(uc) || c == '_') {
      while (i_ < src_.size()) {
        const auto w = static_cast<unsigned char>(src_[i_]);
        if (!std::isalnum(w) && w != '_' && w != '-') break;
        t.text.push_back(take());
      }
      t.kind = Tok::Word;
      if (i_ < src_.size() && src_[i_] == ':') {
        t.text.push_back(take());
        while (i_ < src_.size() && is_curie_local_char(src_[i_])) {
          t.text.push_back(take());
        }
        t.kind = Tok::Iri;
      }
    } else {
      advance();
      t.kind = Tok::Bad;
      t.text = std::string("unexpected character '") + c + "'";
    }
    return t;
  }

 private:
  char take() {
    const char c = src_[i_];
    advance();
    return c;
  }

  void advance() {
    const auto c = static_cast<unsigned char>(src_[i_++]);
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::size_t iriref_end() const {
    for (std::size_t j = i_ + 1; j < src_.size(); ++j) {
      if (src_[j] == '>') return j;
      if (std::isspace(static_cast<unsigned char>(src_[j]))) break;
    }
    return std::string_view::npos;
  }

  void lex_string(Token& t) {
    advance();
    while (true) {
      if (i_ >= src_.size() || src_[i_] == '\n') {
        t.kind = Tok::Bad;
        t.text = "unterminated string";
        return;
      }
      const char c = take();
      if (c == '"') break;
      if (c == '\\' && i_ < src_.size() &&
          (src_[i_] == '"' || src_[i_] == '\\')) {
        t.text.push_back(take());
        continue;
      }
      t.text.push_back(c);
    }
    t.kind = Tok::String;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct SyntaxError {
  Token at;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  RuleParseResult run() {
    std::set<std::string> ids;
    while (tok_.kind != Tok::End) {
      try {
        const Token start = tok_;
        Rule rule = parse_rule();
        if (!ids.insert(rule.id).second) {
          out_.diagnostics.push_back({start.line, start.column, Severity::Error,
                                      "DuplicateRuleId: rule '" + rule.id +
                                          "' is defined more than once"});
          continue;
        }
        out_.rules.push_back(std::move(rule));
      } catch (const SyntaxError& e) {
        const std::string message =
            e.at.kind == Tok::Bad ? e.at.text : e.message;
        out_.diagnostics.push_back(
            {e.at.line, e.at.column, Severity::Error, message});
        // Resynchronize at the next RULE keyword.
        if (tok_.kind != Tok::End) shift();
        while (tok_.kind != Tok::End && !is_word("RULE")) shift();
      }
    }
    return std::move(out_);
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  bool is_word(std::string_view w) const {
    return tok_.kind == Tok::Word && tok_.text == w;
  }

  [[noreturn]] void fail(const std::string& message) {
    std::string m = message;
    if (tok_.kind == Tok::End) m += " before end of input";
    throw SyntaxError{tok_, m};
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'");
    shift();
  }

  std::string expect(Tok kind, const std::string& what) {
    if (tok_.kind != kind) fail("expected " + what);
    std::string text = tok_.text;
    shift();
    return text;
  }

  Rule parse_rule() {
    Rule rule;
    expect_word("RULE");
    rule.id = expect(Tok::Word, "rule id");
    expect_word("WHEN");
    expect_word("TYPE");
    if (tok_.kind != Tok::Cmp || tok_.text != "=") fail("expected '='");
    shift();
    rule.measured_type = expect(Tok::String, "quoted measured type");
    expect_word("AND");
    expect_word("VALUE");
    if (tok_.kind != Tok::Cmp) fail("expected comparator");
    rule.comparator = comparator(tok_.text);
    shift();
    if (tok_.kind != Tok::Number) fail("expected threshold number");
    auto threshold = Decimal::parse(tok_.text);
    if (!threshold) fail("malformed number '" + tok_.text + "'");
    rule.threshold = *threshold;
    shift();
    if (is_word("FOR")) {
      shift();
      const Token at = tok_;
      const auto n = expect(Tok::Number, "sample count");
      if (n.find_first_not_of("0123456789") != std::string::npos ||
          n.size() > 9 || std::stoi(n) < 1) {
        throw SyntaxError{at, "sample count must be a positive integer"};
      }
      rule.sustain = std::stoi(n);
      expect_word("SAMPLES");
    }
    if (is_word("MODE")) {
      shift();
      if (is_word("ON_RISE")) {
        rule.mode = TriggerMode::OnRise;
      } else if (is_word("EVERY")) {
        rule.mode = TriggerMode::Every;
      } else {
        fail("expected ON_RISE or EVERY");
      }
      shift();
    }
    expect_word("THEN");
    rule.actions.push_back(parse_action());
    while (tok_.kind == Tok::Comma) {
      shift();
      rule.actions.push_back(parse_action());
    }
    return rule;
  }

  Action parse_action() {
    Action a;
    if (is_word("ACTIVATE")) {
      shift();
      a.kind = Action::Kind::Activate;
      a.target = expect(Tok::Iri, "activator IRI");
    } else if (is_word("ALERT")) {
      shift();
      a.kind = Action::Kind::Alert;
      a.target = expect(Tok::Iri, "actor IRI");
      expect_word("VIA");
      a.channel = expect(Tok::String, "quoted channel");
    } else {
      fail("expected ACTIVATE or ALERT");
    }
    return a;
  }

  Comparator comparator(const std::string& text) {
    if (text == "<") return Comparator::Less;
    if (text == "<=") return Comparator::LessEqual;
    if (text == ">") return Comparator::Greater;
    if (text == ">=") return Comparator::GreaterEqual;
    if (text == "=") return Comparator::Equal;
    if (text == "!=") return Comparator::NotEqual;
    fail("unknown comparator '" + text + "'");
  }

  Lexer lexer_;
  Token tok_;
  RuleParseResult out_;
};

}  // namespace

RuleParseResult parse_rules(std::string_view text) {
  return Parser(text).run();
}

std::vector<Rule> parse_rules_or_throw(std::string_view text) {
  auto result = parse_rules(text);
  for (const auto& d : result.diagnostics) {
    if (d.severity != Severity::Error) continue;
    const bool dup = d.message.rfind("DuplicateRuleId", 0) == 0;
    throw Error(dup ? Errc::DuplicateRuleId : Errc::RuleSyntax,
                format_diagnostic(d));
  }
  return std::move(result.rules);
}

Decision evaluate_rule(const Rule& rule, std::span<const SignalPayload> window) {
  std::vector<const Decimal*> values;
  for (const auto& s : window) {
    if (s.measured_type == rule.measured_type) values.push_back(&s.value);
  }
  const auto sustain = static_cast<std::size_t>(rule.sustain);
  // Condition over the first `count` samples.
  auto holds = [&](std::size_t count) {
    if (count < sustain) return false;
    for (std::size_t k = count - sustain; k < count; ++k) {
      if (!compare(*values[k], rule.comparator, rule.threshold)) return false;
    }
    return true;
  };

  Decision d;
  d.rule_id = rule.id;
  if (values.empty() || !holds(values.size())) return d;
  d.fired = rule.mode == TriggerMode::Every || !holds(values.size() - 1);
  if (d.fired) d.actions = rule.actions;
  return d;
}

}  // namespace rhdt
