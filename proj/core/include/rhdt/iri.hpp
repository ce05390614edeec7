#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace rhdt {

// An expanded absolute IRI. Compact forms are resolved before an Iri exists,
// so comparison is always on the absolute text.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }

  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

// Well-known namespace IRIs. Values are fixed for the text format.
namespace ns {
inline constexpr std::string_view kCrm = "http://www.cidoc-crm.org/cidoc-crm/";
inline constexpr std::string_view kCrmDig = "http://www.ics.forth.gr/isl/CRMdig/";
inline constexpr std::string_view kCrmSci = "http://www.ics.forth.gr/isl/CRMsci/";
inline constexpr std::string_view kCrmPe = "http://www.ics.forth.gr/isl/CRMpe/";
inline constexpr std::string_view kHdto = "https://w3id.org/hdto/";
inline constexpr std::string_view kRhdto = "https://w3id.org/rhdto/";
inline constexpr std::string_view kWikidata = "https://www.wikidata.org/wiki/";
// Reserved vocabulary for annotations and registry extensions.
inline constexpr std::string_view kVocab = "https://w3id.org/rhdto/tool#";
// Fresh nodes minted by the runtime.
inline constexpr std::string_view kRun = "https://w3id.org/rhdto/run/";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

bool is_absolute_iri(std::string_view text);

// True for characters allowed in the local part of a compact IRI.
bool is_curie_local_char(char c);
bool is_valid_prefix_name(std::string_view name);
bool is_valid_curie_local(std::string_view local);

class PrefixMap {
 public:
  // crm, crmdig, crmsci, crmpe, hdto, rhdto, wd.
  static PrefixMap defaults();

  void declare(std::string name, std::string iri);
  bool contains(std::string_view name) const;
  std::optional<std::string> lookup(std::string_view name) const;

  // Accepts "<abs>", "prefix:local" (declared prefix) or a bare absolute IRI.
  std::optional<Iri> resolve(std::string_view text) const;
  Iri expand(std::string_view text) const;  // throws InvalidIri

  // Longest matching namespace whose remainder is a valid local name,
  // else "<iri>".
  std::string compact(const Iri& iri) const;

  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Last path/fragment segment of an IRI ("sensor-th" for ".../sensor-th").
std::string local_name(const Iri& iri);

}  // namespace rhdt
