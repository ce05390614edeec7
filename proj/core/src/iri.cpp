#include "rhdt/iri.hpp"

#include <cctype>

#include "rhdt/error.hpp"

namespace rhdt {

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_absolute_iri(value_)) {
    throw Error(Errc::InvalidIri, "not an absolute IRI: '" + value_ + "'");
  }
}

bool is_absolute_iri(std::string_view text) {
  // scheme ":" rest, scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  if (colon + 1 >= text.size()) return false;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '\\' || c == '^' || c == '`') {
      return false;
    }
  }
  return true;
}

bool is_curie_local_char(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '/' ||
         c == '%' || c >= 0x80;
}

bool is_valid_prefix_name(std::string_view name) {
  if (name.empty()) return true;  // the empty prefix ":local"
  if (!std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (const char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_' && c != '-') return false;
  }
  return name.back() != '-';
}

bool is_valid_curie_local(std::string_view local) {
  for (const char c : local) {
    if (!is_curie_local_char(c)) return false;
  }
  // A trailing '.' would be read as the statement terminator.
  return local.empty() || local.back() != '.';
}

PrefixMap PrefixMap::defaults() {
  PrefixMap m;
  m.declare("crm", std::string(ns::kCrm));
  m.declare("crmdig", std::string(ns::kCrmDig));
  m.declare("crmsci", std::string(ns::kCrmSci));
  m.declare("crmpe", std::string(ns::kCrmPe));
  m.declare("hdto", std::string(ns::kHdto));
  m.declare("rhdto", std::string(ns::kRhdto));
  m.declare("wd", std::string(ns::kWikidata));
  return m;
}

void PrefixMap::declare(std::string name, std::string iri) {
  if (!is_valid_prefix_name(name)) {
    throw Error(Errc::InvalidIri, "invalid prefix name '" + name + "'");
  }
  if (!is_absolute_iri(iri)) {
    throw Error(Errc::InvalidIri,
                "prefix '" + name + "' must map to an absolute IRI");
  }
  entries_[std::move(name)] = std::move(iri);
}

bool PrefixMap::contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

std::optional<std::string> PrefixMap::lookup(std::string_view name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Iri> PrefixMap::resolve(std::string_view text) const {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    const auto inner = text.substr(1, text.size() - 2);
    if (!is_absolute_iri(inner)) return std::nullopt;
    return Iri(std::string(inner));
  }
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto prefix = text.substr(0, colon);
    const auto local = text.substr(colon + 1);
    if (auto base = lookup(prefix)) {
      if (!is_valid_curie_local(local)) return std::nullopt;
      return Iri(*base + std::string(local));
    }
  }
  if (is_absolute_iri(text) && text.find("://") != std::string_view::npos) {
    return Iri(std::string(text));
  }
  return std::nullopt;
}

Iri PrefixMap::expand(std::string_view text) const {
  auto iri = resolve(text);
  if (!iri) {
    throw Error(Errc::InvalidIri, "cannot resolve '" + std::string(text) +
                                      "' against declared prefixes");
  }
  return *iri;
}

std::string PrefixMap::compact(const Iri& iri) const {
  const std::string& s = iri.str();
  const std::string* best_name = nullptr;
  std::size_t best_len = 0;
  for (const auto& [name, base] : entries_) {
    if (base.size() > best_len && s.size() >= base.size() &&
        s.compare(0, base.size(), base) == 0 &&
        is_valid_curie_local(std::string_view(s).substr(base.size()))) {
      best_name = &name;
      best_len = base.size();
    }
  }
  if (best_name == nullptr) return "<" + s + ">";
  return *best_name + ":" + s.substr(best_len);
}

std::string local_name(const Iri& iri) {
  const std::string& s = iri.str();
  const auto cut = s.find_last_of("/#:");
  return cut == std::string::npos ? s : s.substr(cut + 1);
}

}  // namespace rhdt
