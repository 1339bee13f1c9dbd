#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "mixt/names.hpp"

using namespace mixt;

namespace {

const std::string kData = MIXT_DATA_DIR;

// Reference Dice implementation, written independently of the library: a
// byte-level UTF-8 decoder, a minimal lowercase table and direct set algebra.
std::vector<std::uint32_t> decode_utf8(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    unsigned char c = s[i];
    std::uint32_t cp = 0;
    int extra = 0;
    if (c < 0x80) { cp = c; }
    else if ((c >> 5) == 0x6) { cp = c & 0x1F; extra = 1; }
    else if ((c >> 4) == 0xE) { cp = c & 0x0F; extra = 2; }
    else { cp = c & 0x07; extra = 3; }
    ++i;
    for (int k = 0; k < extra && i < s.size(); ++k, ++i)
      cp = (cp << 6) | (s[i] & 0x3F);
    out.push_back(cp);
  }
  return out;
}

std::uint32_t lower_cp(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x141) return 0x142;                      // stroked L
  if (cp >= 0x100 && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  return cp;
}

bool word_cp(std::uint32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
         (cp >= '0' && cp <= '9') || cp > 127;
}

std::set<std::vector<std::uint32_t>> oracle_trigrams(const std::string& s) {
  std::vector<std::uint32_t> padded{'_'};
  for (std::uint32_t cp : decode_utf8(s)) {
    if (word_cp(cp)) padded.push_back(lower_cp(cp));
    else if (padded.back() != '_') padded.push_back('_');
  }
  if (padded.back() != '_') padded.push_back('_');
  std::set<std::vector<std::uint32_t>> grams;
  if (padded.size() <= 2) return grams;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i)
    grams.insert({padded[i], padded[i + 1], padded[i + 2]});
  return grams;
}

double oracle_dice(const std::string& a, const std::string& b) {
  auto ta = oracle_trigrams(a);
  auto tb = oracle_trigrams(b);
  if (ta.empty() && tb.empty()) return a == b ? 1.0 : 0.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& g : ta) inter += tb.count(g);
  return 2.0 * static_cast<double>(inter) / static_cast<double>(ta.size() + tb.size());
}

// the eight Latin-script rows of the worked variant table, with languages
const std::vector<std::pair<std::string, std::string>> kVariantRows = {
    {"Vladimir Putin", "en"}, {"Vladimir Poetin", "nl"}, {"Vladimir Poutine", "fr"},
    {"Vladimir V Putin", "en"}, {"Vladmir Putin", "en"}, {"Vladimir Putin", "es"},
    {"Wladimir Putin", "de"}, {"Władimir Putin", "pl"},
};

CueLexicon bundled_cues() {
  return load_cue_lexicon(kData + "/names/cues_en.txt", "en");
}

}  // namespace

TEST_CASE("trigram similarity equals the brute-force oracle on the variant table") {
  for (const auto& [a, _] : kVariantRows)
    for (const auto& [b, __] : kVariantRows)
      CHECK(trigram_similarity(a, b) == doctest::Approx(oracle_dice(a, b)).epsilon(1e-12));
}

TEST_CASE("frozen similarity values") {
  CHECK(trigram_similarity("Vladimir Putin", "Wladimir Putin") ==
        doctest::Approx(0.8571428571428571).epsilon(1e-12));
  CHECK(trigram_similarity("Putin", "Vladimir Putin") ==
        doctest::Approx(0.5263157894736842).epsilon(1e-12));
  CHECK(trigram_similarity("Vladimir Putin", "Tony Blair") ==
        doctest::Approx(0.08333333333333333).epsilon(1e-12));
  double min_pair = 1.0;
  for (const auto& [a, _] : kVariantRows)
    for (const auto& [b, __] : kVariantRows)
      if (a != b) min_pair = std::min(min_pair, trigram_similarity(a, b));
  CHECK(min_pair == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("similarity is symmetric, bounded and reflexive") {
  const std::vector<std::string> names = {"Vladimir Putin", "Putin", "Tony Blair",
                                          "Władimir Putin", "A", ""};
  for (const auto& a : names) {
    CHECK(trigram_similarity(a, a) == (a.empty() ? 1.0 : 1.0));
    for (const auto& b : names) {
      double s = trigram_similarity(a, b);
      CHECK(s == trigram_similarity(b, a));
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
  }
  CHECK(trigram_similarity("", "Putin") == 0.0);
}

TEST_CASE("the variant rows collapse to one record at the default threshold") {
  NameDatabase db;
  for (const auto& [surface, lang] : kVariantRows) db.merge_variant(surface, lang);
  REQUIRE(db.records().size() == 1);
  CHECK(db.records()[0].prototype == "Vladimir Putin");
  CHECK(db.records()[0].total_frequency == 8);
  const NameVariant* v = db.records()[0].find_variant("Vladimir Putin");
  REQUIRE(v != nullptr);
  CHECK(v->count == 2);
  CHECK(v->per_language.at("en") == 1);
  CHECK(v->per_language.at("es") == 1);
}

TEST_CASE("a bare surname opens a new record at a strict threshold") {
  NameDatabase db(0.75);
  db.merge_variant("Vladimir Putin", "en");
  std::int64_t id = db.merge_variant("Putin", "en");
  CHECK(db.records().size() == 2);
  CHECK(db.record(id)->prototype == "Putin");
}

TEST_CASE("prototype election prefers frequency then lexicographic order") {
  NameDatabase db;
  db.merge_variant("Vladimir Putin", "en");
  db.merge_variant("Wladimir Putin", "de");
  db.merge_variant("Wladimir Putin", "de");
  REQUIRE(db.records().size() == 1);
  CHECK(db.records()[0].prototype == "Wladimir Putin");
  db.merge_variant("Vladimir Putin", "en");
  CHECK(db.records()[0].prototype == "Vladimir Putin");
}

TEST_CASE("enrichment variants are stored but never become prototypes") {
  NameDatabase db;
  std::int64_t id = db.merge_variant("Vladimir Putin", "en");
  std::map<std::string, std::vector<std::string>> table;
  table["Vladimir Putin"] = {"Владимир Путин"};
  StaticAliasClient client(std::move(table));
  db.add_enrichment(id, client);
  const NameRecord* r = db.record(id);
  REQUIRE(r != nullptr);
  const NameVariant* v = r->find_variant("Владимир Путин");
  REQUIRE(v != nullptr);
  CHECK(v->enrichment);
  CHECK(r->prototype == "Vladimir Putin");
}

TEST_CASE("save/load round-trips the database") {
  NameDatabase db;
  for (const auto& [surface, lang] : kVariantRows) db.merge_variant(surface, lang);
  db.merge_variant("Tony Blair", "en");
  std::stringstream buf;
  db.save(buf);
  NameDatabase loaded = NameDatabase::load(buf);
  REQUIRE(loaded.records().size() == db.records().size());
  for (const auto& r : db.records()) {
    const NameRecord* lr = loaded.record(r.alias_id);
    REQUIRE(lr != nullptr);
    CHECK(lr->prototype == r.prototype);
    CHECK(lr->total_frequency == r.total_frequency);
    CHECK(lr->variants.size() == r.variants.size());
  }
}

TEST_CASE("cue-adjacent recognition excludes the cue and spans particles") {
  auto cues = bundled_cues();
  NameDatabase db;
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "President Vladimir Putin met Dr Ursula von der Leyen yesterday.";
  auto anns = recognize_names(d, cues, db);
  REQUIRE(anns.size() == 2);
  CHECK(anns[0].surface == "Vladimir Putin");
  CHECK(anns[1].surface == "Ursula von der Leyen");
  CHECK(d.text.substr(anns[0].offset, anns[0].length) == anns[0].surface);
}

TEST_CASE("post cues also license a run") {
  auto cues = bundled_cues();
  NameDatabase db;
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "Tony Blair said the vote would proceed.";
  auto anns = recognize_names(d, cues, db);
  REQUIRE(anns.size() == 1);
  CHECK(anns[0].surface == "Tony Blair");
}

TEST_CASE("cue-free mentions need a known record") {
  auto cues = bundled_cues();
  NameDatabase db;
  Document first;
  first.id = "a";
  first.language = "en";
  first.text = "Nobody recognized Angela Merkel at the station.";
  CHECK(recognize_names(first, cues, db).empty());

  Document cued;
  cued.id = "b";
  cued.language = "en";
  cued.text = "Chancellor Angela Merkel spoke first.";
  REQUIRE(recognize_names(cued, cues, db).size() == 1);

  auto again = recognize_names(first, cues, db);
  REQUIRE(again.size() == 1);
  CHECK(again[0].surface == "Angela Merkel");
  CHECK(again[0].normalized == "Angela Merkel");
}

TEST_CASE("single-word mentions require an exact stored variant") {
  auto cues = bundled_cues();
  NameDatabase db;
  db.merge_variant("Vladimir Putin", "en");
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "Analysts quoted Putin at length.";
  CHECK(recognize_names(d, cues, db).empty());
  db.merge_variant("Putin", "en");
  CHECK(recognize_names(d, cues, db).size() == 1);
}

TEST_CASE("name vectors fall back to raw counts without corpus stats") {
  auto cues = bundled_cues();
  NameDatabase db;
  db.merge_variant("Vladimir Putin", "en");
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "President Vladimir Putin praised Vladimir Putin.";
  auto anns = recognize_names(d, cues, db);
  REQUIRE(anns.size() == 2);
  auto raw = name_vector(anns);
  CHECK(raw.get(anns[0].aux_value("alias_id")) == 2.0);
  NameCorpusStats stats;
  stats.total_docs = 100;
  stats.docs_with_alias[std::stoll(anns[0].aux_value("alias_id"))] = 10;
  auto weighted = name_vector(anns, &stats);
  CHECK(weighted.get(anns[0].aux_value("alias_id")) ==
        doctest::Approx(2.0 * std::log(10.0)));
}

TEST_CASE("particles never double as cue words") {
  CueLexicon bad;
  bad.pre_cues.insert("de");
  bad.particles.insert("de");
  std::string path = std::string(MIXT_FIXTURE_DIR) + "/bad_cues.txt";
  {
    std::ofstream out(path);
    out << "[PRE]\nde\n[PARTICLES]\nde\n";
  }
  CHECK_THROWS_AS(load_cue_lexicon(path, "en"), ResourceError);
  std::remove(path.c_str());
}
