#include <gtest/gtest.h>

#include "rhdt/error.hpp"
#include "rhdt/iri.hpp"

namespace rhdt {
namespace {

TEST(Iri, RequiresAbsoluteForm) {
  EXPECT_NO_THROW(Iri("https://www.wikidata.org/wiki/Q3925522"));
  EXPECT_NO_THROW(Iri("urn:x-test:1"));
  for (const char* bad : {"", "Q3925522", "wd:", "/relative", "1http://x"}) {
    try {
      Iri iri{std::string(bad)};
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidIri) << bad;
    }
  }
}

TEST(PrefixMap, DefaultsCarrySevenNamespaces) {
  const auto p = PrefixMap::defaults();
  EXPECT_EQ(p.entries().size(), 7u);
  for (const char* name : {"crm", "crmdig", "crmsci", "crmpe", "hdto", "rhdto", "wd"}) {
    EXPECT_TRUE(p.contains(name)) << name;
  }
  EXPECT_EQ(p.lookup("wd"), std::string(ns::kWikidata));
}

TEST(PrefixMap, ResolvesCuriesAndIriRefs) {
  const auto p = PrefixMap::defaults();
  EXPECT_EQ(p.expand("wd:Q3925522").str(), "https://www.wikidata.org/wiki/Q3925522");
  EXPECT_EQ(p.expand("<https://example.org/a>").str(), "https://example.org/a");
  EXPECT_EQ(p.expand("https://example.org/a").str(), "https://example.org/a");
  EXPECT_FALSE(p.resolve("nope:thing").has_value());
  EXPECT_THROW(p.expand("nope:thing"), Error);
}

TEST(PrefixMap, CompactPrefersLongestNamespace) {
  auto p = PrefixMap::defaults();
  p.declare("run", std::string(ns::kRun));
  // rhdto is a prefix of run's namespace; the longer one wins.
  EXPECT_EQ(p.compact(Iri(std::string(ns::kRun) + "m/s1/0")), "run:m/s1/0");
  EXPECT_EQ(p.compact(Iri(std::string(ns::kRhdto) + "HC9")), "rhdto:HC9");
  EXPECT_EQ(p.compact(Iri("https://example.org/x")), "<https://example.org/x>");
}

TEST(PrefixMap, CompactFallsBackWhenLocalIsUnsafe) {
  const auto p = PrefixMap::defaults();
  const Iri odd("https://www.wikidata.org/wiki/a,b");
  EXPECT_EQ(p.compact(odd).front(), '<');
  const Iri dot("https://www.wikidata.org/wiki/Q1.");
  EXPECT_EQ(p.compact(dot), "<https://www.wikidata.org/wiki/Q1.>");
}

TEST(PrefixMap, CompactExpandRoundTrip) {
  auto p = PrefixMap::defaults();
  p.declare("ex", "https://example.org/");
  for (const char* s : {"https://example.org/a/b", "https://example.org/caffè",
                        "https://www.wikidata.org/wiki/Q1148335",
                        "http://www.cidoc-crm.org/cidoc-crm/E53", "urn:x:y"}) {
    const Iri iri{std::string(s)};
    EXPECT_EQ(p.expand(p.compact(iri)), iri) << s;
  }
}

TEST(Iri, LocalName) {
  EXPECT_EQ(local_name(Iri("https://example.org/pistoia/th-sensor")), "th-sensor");
  EXPECT_EQ(local_name(Iri("https://w3id.org/rhdto/tool#label")), "label");
  EXPECT_EQ(local_name(Iri("urn:x:y")), "y");
}

}  // namespace
}  // namespace rhdt
