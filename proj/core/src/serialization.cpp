#include "rhdt/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "rhdt/decimal.hpp"
#include "rhdt/error.hpp"

namespace rhdt {

namespace {

struct Pos {
  int line = 1;
  int column = 1;
};

enum class Tok { Prefix, IriRef, PName, A, String, Number, Dot, Semi, Comma, DataType, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // unescaped for strings, inner text for IRIREFs
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.pos = pos_;
    if (at_end()) return t;
    const char c = src_[i_];
    if (c == '.' && !(i_ + 1 < src_.size() && is_digit(src_[i_ + 1]))) {
      advance();
      t.kind = Tok::Dot;
    } else if (c == ';') {
      advance();
      t.kind = Tok::Semi;
    } else if (c == ',') {
      advance();
      t.kind = Tok::Comma;
    } else if (c == '^') {
      advance();
      if (!at_end() && src_[i_] == '^') {
        advance();
        t.kind = Tok::DataType;
      } else {
        t.kind = Tok::Bad;
        t.text = "expected '^^'";
      }
    } else if (c == '@') {
      lex_directive(t);
    } else if (c == '<') {
      lex_iriref(t);
    } else if (c == '"') {
      lex_string(t);
    } else if (is_digit(c) || c == '+' || c == '-' || c == '.') {
      lex_number(t);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') {
      lex_name(t);
    } else {
      advance();
      t.kind = Tok::Bad;
      t.text = std::string("unexpected character '") + c + "'";
    }
    return t;
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  bool at_end() const { return i_ >= src_.size(); }

  void advance() {
    const auto c = static_cast<unsigned char>(src_[i_++]);
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++pos_.column;
    }
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_directive(Token& t) {
    advance();
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(src_[i_]))) {
      word.push_back(src_[i_]);
      advance();
    }
    if (word == "prefix") {
      t.kind = Tok::Prefix;
    } else {
      t.kind = Tok::Bad;
      t.text = "unsupported directive '@" + word + "'";
    }
  }

  void lex_iriref(Token& t) {
    advance();
    std::string iri;
    while (!at_end() && src_[i_] != '>' && src_[i_] != '\n') {
      iri.push_back(src_[i_]);
      advance();
    }
    if (at_end() || src_[i_] != '>') {
      t.kind = Tok::Bad;
      t.text = "unterminated IRI";
      return;
    }
    advance();
    t.kind = Tok::IriRef;
    t.text = std::move(iri);
  }

  void lex_string(Token& t) {
    advance();
    std::string value;
    while (true) {
      if (at_end() || src_[i_] == '\n' || src_[i_] == '\r') {
        t.kind = Tok::Bad;
        t.text = "unterminated string";
        return;
      }
      const char c = src_[i_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end()) continue;
        const char e = src_[i_];
        switch (e) {
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          case 'n': value.push_back('\n'); break;
          case 'r': value.push_back('\r'); break;
          case 't': value.push_back('\t'); break;
          default:
            t.kind = Tok::Bad;
            t.text = std::string("unknown escape '\\") + e + "'";
            advance();
            return;
        }
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    t.kind = Tok::String;
    t.text = std::move(value);
  }

  void lex_number(Token& t) {
    std::string num;
    if (src_[i_] == '+' || src_[i_] == '-') {
      num.push_back(src_[i_]);
      advance();
    }
    while (!at_end() && is_digit(src_[i_])) {
      num.push_back(src_[i_]);
      advance();
    }
    if (i_ + 1 < src_.size() && src_[i_] == '.' && is_digit(src_[i_ + 1])) {
      num.push_back('.');
      advance();
      while (!at_end() && is_digit(src_[i_])) {
        num.push_back(src_[i_]);
        advance();
      }
    }
    if (num.empty() || num == "+" || num == "-") {
      t.kind = Tok::Bad;
      t.text = "malformed number";
      return;
    }
    t.kind = Tok::Number;
    t.text = std::move(num);
  }

  void lex_name(Token& t) {
    std::string name;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(src_[i_]);
      if (!std::isalnum(c) && c != '_' && c != '-') break;
      name.push_back(src_[i_]);
      advance();
    }
    if (at_end() || src_[i_] != ':') {
      if (name == "a") {
        t.kind = Tok::A;
      } else {
        t.kind = Tok::Bad;
        t.text = "bad CURIE '" + name + "' (missing ':')";
      }
      return;
    }
    name.push_back(':');
    advance();
    const std::size_t start = i_;
    std::size_t end = i_;
    while (end < src_.size() && is_curie_local_char(src_[end])) ++end;
    while (end > start && src_[end - 1] == '.') --end;
    while (i_ < end) {
      name.push_back(src_[i_]);
      advance();
    }
    t.kind = Tok::PName;
    t.text = std::move(name);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Pos pos_;
};

enum class TermKind { Iri, Literal, TypeKeyword };

struct Term {
  TermKind kind = TermKind::Iri;
  Iri iri;
  Literal literal;
  Pos pos;
};

struct RawTriple {
  Term subject;
  Term predicate;
  Term object;
};

struct SyntaxResult {
  PrefixMap prefixes;
  std::vector<RawTriple> triples;
  std::vector<ParseDiagnostic> diagnostics;
};

class SyntaxParser {
 public:
  explicit SyntaxParser(std::string_view text) : lexer_(text) { shift(); }

  SyntaxResult run() {
    while (tok_.kind != Tok::End) {
      const auto before = error_count_;
      if (tok_.kind == Tok::Prefix) {
        parse_prefix();
      } else {
        parse_triples();
      }
      if (error_count_ != before) recover();
    }
    return std::move(out_);
  }

 private:
  void shift() {
    if (tok_.kind != Tok::End) last_pos_ = tok_.pos;
    tok_ = lexer_.next();
  }

  bool fail(const Pos& pos, std::string message) {
    ++error_count_;
    out_.diagnostics.push_back(
        {pos.line, pos.column, Severity::Error, std::move(message)});
    return false;
  }

  bool fail_here(const std::string& expected) {
    if (tok_.kind == Tok::Bad) return fail(tok_.pos, tok_.text);
    if (tok_.kind == Tok::End) {
      // Point at the last token so the position stays inside the input.
      return fail(last_pos_, expected + " before end of input");
    }
    return fail(tok_.pos, expected);
  }

  // Skip to just past the next '.', or to end of input.
  void recover() {
    while (tok_.kind != Tok::End && tok_.kind != Tok::Dot) shift();
    if (tok_.kind == Tok::Dot) shift();
  }

  void parse_prefix() {
    shift();
    if (tok_.kind != Tok::PName || tok_.text.back() != ':' ||
        tok_.text.find(':') != tok_.text.size() - 1) {
      fail_here("expected prefix name like 'ex:'");
      return;
    }
    std::string name = tok_.text.substr(0, tok_.text.size() - 1);
    const Pos name_pos = tok_.pos;
    shift();
    if (tok_.kind != Tok::IriRef) {
      fail_here("expected <IRI> in @prefix");
      return;
    }
    if (!is_absolute_iri(tok_.text) || !is_valid_prefix_name(name)) {
      fail(name_pos, "invalid prefix declaration");
      return;
    }
    const std::string iri = tok_.text;
    shift();
    if (tok_.kind != Tok::Dot) {
      fail_here("missing '.' after @prefix");
      return;
    }
    shift();
    if (out_.prefixes.contains(name) && *out_.prefixes.lookup(name) != iri) {
      out_.diagnostics.push_back({name_pos.line, name_pos.column,
                                  Severity::Warning,
                                  "prefix '" + name + "' redefined"});
    }
    out_.prefixes.declare(name, iri);
  }

  bool parse_iri_term(Term& term) {
    term.pos = tok_.pos;
    term.kind = TermKind::Iri;
    if (tok_.kind == Tok::IriRef) {
      if (!is_absolute_iri(tok_.text)) {
        return fail(tok_.pos, "relative or malformed IRI <" + tok_.text + ">");
      }
      term.iri = Iri(tok_.text);
      shift();
      return true;
    }
    if (tok_.kind == Tok::PName) {
      const auto colon = tok_.text.find(':');
      const auto prefix = tok_.text.substr(0, colon);
      if (!out_.prefixes.contains(prefix)) {
        return fail(tok_.pos, "bad CURIE '" + tok_.text +
                                  "': undeclared prefix '" + prefix + "'");
      }
      auto iri = out_.prefixes.resolve(tok_.text);
      if (!iri) return fail(tok_.pos, "bad CURIE '" + tok_.text + "'");
      term.iri = *iri;
      shift();
      return true;
    }
    return fail_here("expected IRI or CURIE");
  }

  bool parse_object(Term& term) {
    if (tok_.kind == Tok::IriRef || tok_.kind == Tok::PName) {
      return parse_iri_term(term);
    }
    term.pos = tok_.pos;
    term.kind = TermKind::Literal;
    if (tok_.kind == Tok::Number) {
      term.literal = {tok_.text, LiteralKind::Decimal};
      shift();
      return true;
    }
    if (tok_.kind != Tok::String) return fail_here("expected object");
    term.literal = {tok_.text, LiteralKind::String};
    shift();
    if (tok_.kind != Tok::DataType) return true;
    shift();
    Term dt;
    if (!parse_iri_term(dt)) return false;
    const auto kind = literal_kind_from_xsd(dt.iri.str());
    if (!kind) {
      return fail(dt.pos, "unsupported datatype <" + dt.iri.str() + ">");
    }
    term.literal.datatype = *kind;
    return true;
  }

  void parse_triples() {
    Term subject;
    if (!parse_iri_term(subject)) return;
    while (true) {
      Term predicate;
      predicate.pos = tok_.pos;
      if (tok_.kind == Tok::A) {
        predicate.kind = TermKind::TypeKeyword;
        shift();
      } else if (!parse_iri_term(predicate)) {
        return;
      }
      while (true) {
        Term object;
        if (!parse_object(object)) return;
        out_.triples.push_back({subject, predicate, std::move(object)});
        if (tok_.kind != Tok::Comma) break;
        shift();
      }
      if (tok_.kind != Tok::Semi) break;
      shift();
      // Turtle allows a dangling ';' before '.'.
      if (tok_.kind == Tok::Dot) break;
    }
    if (tok_.kind != Tok::Dot) {
      fail_here("missing '.' at end of statement");
      return;
    }
    shift();
  }

  Lexer lexer_;
  Token tok_;
  Pos last_pos_;
  std::size_t error_count_ = 0;
  SyntaxResult out_;
};

void error_at(std::vector<ParseDiagnostic>& out, const Pos& pos,
              std::string message) {
  out.push_back({pos.line, pos.column, Severity::Error, std::move(message)});
}

std::optional<std::string> vocab_term(const Iri& iri) {
  const auto& s = iri.str();
  if (s.size() > ns::kVocab.size() && s.compare(0, ns::kVocab.size(), ns::kVocab) == 0) {
    return s.substr(ns::kVocab.size());
  }
  return std::nullopt;
}

std::string escape_string(const std::string& v) {
  std::string out = "\"";
  for (const char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string render_literal(const Literal& lit, const PrefixMap& prefixes) {
  if (lit.datatype == LiteralKind::Decimal && Decimal::parse(lit.value)) {
    // Bare token; the lexer reads exactly this text back.
    return lit.value;
  }
  std::string out = escape_string(lit.value);
  if (lit.datatype != LiteralKind::String) {
    out += "^^" + prefixes.compact(Iri(xsd_iri(lit.datatype)));
  }
  return out;
}

std::string render_object(const Object& o, const PrefixMap& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&o)) return prefixes.compact(*iri);
  return render_literal(std::get<Literal>(o), prefixes);
}

}  // namespace

ParseResult parse_graph(std::string_view text,
                        std::shared_ptr<const Registry> registry) {
  auto syntax = SyntaxParser(text).run();
  ParseResult result;
  result.diagnostics = std::move(syntax.diagnostics);
  if (has_errors(result.diagnostics)) return result;

  const Registry& reg = *registry;
  Graph g(registry, syntax.prefixes);
  auto& diags = result.diagnostics;

  // Pass 1: typed nodes.
  for (const auto& t : syntax.triples) {
    if (t.predicate.kind != TermKind::TypeKeyword) continue;
    if (t.object.kind != TermKind::Iri) {
      error_at(diags, t.object.pos, "'a' requires a class IRI");
      continue;
    }
    const auto cls = reg.class_for_iri(t.object.iri);
    if (!cls) {
      error_at(diags, t.object.pos, "UnknownClass: <" + t.object.iri.str() +
                                        "> is not a registered class");
      continue;
    }
    g.add_entity(t.subject.iri, {*cls});
  }

  // Pass 2: statements and annotations.
  std::map<Statement, Pos> positions;
  for (const auto& t : syntax.triples) {
    if (t.predicate.kind == TermKind::TypeKeyword) continue;
    if (t.object.kind == TermKind::Literal &&
        !literal_is_well_formed(t.object.literal)) {
      error_at(diags, t.object.pos,
               "DatatypeViolation: '" + t.object.literal.value +
                   "' is not a valid " +
                   std::string(to_string(t.object.literal.datatype)));
      continue;
    }
    if (auto key = vocab_term(t.predicate.iri)) {
      if (!annotation::is_reserved(*key)) {
        error_at(diags, t.predicate.pos, "unknown annotation '" + *key + "'");
      } else if (t.object.kind != TermKind::Literal) {
        error_at(diags, t.object.pos, "annotation '" + *key + "' needs a literal");
      } else if (!g.has_node(t.subject.iri)) {
        error_at(diags, t.subject.pos,
                 "UnknownSubject: annotation on untyped node " + t.subject.iri.str());
      } else {
        g.set_annotation(t.subject.iri, *key, t.object.literal);
      }
      continue;
    }
    const auto prop = reg.property_for_iri(t.predicate.iri);
    if (!prop) {
      error_at(diags, t.predicate.pos, "UnknownProperty: <" +
                                           t.predicate.iri.str() +
                                           "> is not a registered property");
      continue;
    }
    Statement s{t.subject.iri, *prop,
                t.object.kind == TermKind::Iri ? Object(t.object.iri)
                                               : Object(t.object.literal)};
    if (!g.insert_unvalidated(s)) {
      diags.push_back({t.subject.pos.line, t.subject.pos.column,
                       Severity::Warning, "duplicate statement ignored"});
      continue;
    }
    positions.emplace(s, t.subject.pos);
  }

  for (const auto& v : validate_graph(g).violations) {
    const auto& pos = positions.at(v.statement);
    error_at(diags, pos,
             std::string(to_string(v.reason)) + ": " + v.message);
  }

  std::stable_sort(diags.begin(), diags.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                   });
  if (!has_errors(diags)) result.graph.emplace(std::move(g));
  return result;
}

std::string emit_graph(const Graph& g) {
  const auto& prefixes = g.prefixes();
  const auto& reg = g.registry();
  std::string out;
  for (const auto& [name, iri] : prefixes.entries()) {
    out += "@prefix " + name + ": <" + iri + "> .\n";
  }

  std::map<Iri, std::map<PropertyId, std::set<Object>>> by_subject;
  for (const auto& [iri, node] : g.nodes()) by_subject[iri];
  for (const auto& s : g.statements()) {
    by_subject[s.subject][s.property].insert(s.object);
  }

  for (const auto& [subject, props] : by_subject) {
    std::vector<std::string> parts;
    const auto* node = g.find_node(subject);
    if (node != nullptr) {
      std::string types = "a ";
      bool first = true;
      for (const auto& t : node->types) {
        if (!first) types += ", ";
        types += prefixes.compact(reg.class_iri(t));
        first = false;
      }
      parts.push_back(std::move(types));
    }
    for (const auto& [prop, objects] : props) {
      std::string line = reg.has_property(prop)
                             ? prefixes.compact(reg.property_iri(prop))
                             : prop;
      bool first = true;
      for (const auto& o : objects) {
        line += first ? " " : ", ";
        line += render_object(o, prefixes);
        first = false;
      }
      parts.push_back(std::move(line));
    }
    if (node != nullptr) {
      for (const auto& [key, value] : node->annotations) {
        parts.push_back(prefixes.compact(Iri(std::string(ns::kVocab) + key)) +
                        " " + render_literal(value, prefixes));
      }
    }
    if (!out.empty()) out += "\n";
    out += prefixes.compact(subject);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out += (i == 0 ? " " : " ;\n    ") + parts[i];
    }
    out += " .\n";
  }
  return out;
}

std::vector<ParseDiagnostic> load_registry_extension(std::string_view text,
                                                     Registry& registry) {
  auto syntax = SyntaxParser(text).run();
  auto diags = std::move(syntax.diagnostics);
  if (has_errors(diags)) return diags;

  struct Entry {
    Pos pos;
    bool is_class = false;
    bool is_property = false;
    std::string label;
    std::string scope_note;
    std::vector<Iri> parents;
    std::optional<Term> domain;
    std::optional<Term> range;
  };
  std::map<Iri, Entry> entries;
  std::vector<Iri> order;
  for (const auto& t : syntax.triples) {
    auto [it, inserted] = entries.try_emplace(t.subject.iri);
    if (inserted) {
      it->second.pos = t.subject.pos;
      order.push_back(t.subject.iri);
    }
    auto& e = it->second;
    if (t.predicate.kind == TermKind::TypeKeyword) {
      const auto kind = t.object.kind == TermKind::Iri ? vocab_term(t.object.iri)
                                                       : std::nullopt;
      if (kind == "Class") {
        e.is_class = true;
      } else if (kind == "Property") {
        e.is_property = true;
      } else {
        error_at(diags, t.object.pos, "expected rht:Class or rht:Property");
      }
      continue;
    }
    const auto key = vocab_term(t.predicate.iri);
    const bool literal = t.object.kind == TermKind::Literal;
    if (key == "label" && literal) {
      e.label = t.object.literal.value;
    } else if (key == "scopeNote" && literal) {
      e.scope_note = t.object.literal.value;
    } else if (key == "subClassOf" && !literal) {
      e.parents.push_back(t.object.iri);
    } else if (key == "domain" && !literal) {
      e.domain = t.object;
    } else if (key == "range" && !literal) {
      e.range = t.object;
    } else {
      error_at(diags, t.predicate.pos,
               "unsupported extension predicate <" + t.predicate.iri.str() + ">");
    }
  }
  if (has_errors(diags)) return diags;

  auto split = [](const Iri& iri) -> std::optional<std::pair<Namespace, std::string>> {
    for (auto n : {Namespace::CRM, Namespace::CRMdig, Namespace::CRMsci,
                   Namespace::CRMpe, Namespace::HDTO, Namespace::RHDTO}) {
      const auto base = namespace_base(n);
      const auto& s = iri.str();
      if (s.size() > base.size() && s.compare(0, base.size(), base) == 0 &&
          s.find_first_of("/#", base.size()) == std::string::npos) {
        return std::make_pair(n, s.substr(base.size()));
      }
    }
    return std::nullopt;
  };

  Registry staged = registry;
  std::vector<OntologyClassDef> classes;
  std::vector<std::pair<Pos, PropertyDef>> properties;
  for (const auto& iri : order) {
    const auto& e = entries.at(iri);
    const auto parts = split(iri);
    if (!parts || e.is_class == e.is_property) {
      error_at(diags, e.pos, "<" + iri.str() +
                                 "> must be exactly one of rht:Class or "
                                 "rht:Property in a known namespace");
      continue;
    }
    if (e.is_class) {
      OntologyClassDef def{parts->second, e.label, parts->first, {}, e.scope_note};
      for (const auto& p : e.parents) {
        const auto parent = split(p);
        def.parents.push_back(parent ? parent->second : p.str());
      }
      classes.push_back(std::move(def));
      continue;
    }
    if (!e.domain || !e.range) {
      error_at(diags, e.pos, "property <" + iri.str() + "> needs rht:domain and rht:range");
      continue;
    }
    PropertyDef def{parts->second, e.label, parts->first, {}, ClassId{}};
    const auto domain = split(e.domain->iri);
    def.domain = domain ? domain->second : e.domain->iri.str();
    if (const auto kind = literal_kind_from_xsd(e.range->iri.str())) {
      def.range = *kind;
    } else {
      const auto range = split(e.range->iri);
      def.range = range ? range->second : e.range->iri.str();
    }
    properties.emplace_back(e.pos, std::move(def));
  }
  if (has_errors(diags)) return diags;

  try {
    staged.register_classes(std::move(classes));
  } catch (const Error& err) {
    error_at(diags, Pos{}, std::string(to_string(err.code())) + ": " + err.what());
    return diags;
  }
  for (auto& [pos, def] : properties) {
    try {
      staged.register_property(std::move(def));
    } catch (const Error& err) {
      error_at(diags, pos, std::string(to_string(err.code())) + ": " + err.what());
    }
  }
  if (!has_errors(diags)) registry = std::move(staged);
  return diags;
}

}  // namespace rhdt
