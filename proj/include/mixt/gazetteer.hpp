// Place-name recognition: gazetteer lookup of uppercase-initial words with
// multi-word longest match, geo-stop lists, suffix-stripping rules for
// inflected forms, homograph disambiguation and country-level rollup.

#ifndef MIXT_GAZETTEER_HPP
#define MIXT_GAZETTEER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct GazetteerEntry {
  std::int64_t place_id = 0;
  std::string name;
  std::string name_language = "*";  // exonym/endonym variant label
  double latitude = 0.0;
  double longitude = 0.0;
  std::string country;                   // ISO code
  std::vector<std::string> admin_path;   // town < province < ... < country
  int importance = 4;                    // 0 = country/capital ... 4 = village
};

struct GeoStopList {
  std::string language;
  std::set<std::string> words;  // exact surface forms

  bool contains(const std::string& w) const { return words.count(w) > 0; }
};

struct SuffixRule {
  std::string pattern;      // suffix regex, anchored at word end
  std::string replacement;
};

struct SuffixRuleSet {
  std::string language;
  std::vector<SuffixRule> rules;  // applied in order, first hit wins
};

class Gazetteer {
 public:
  void add(GazetteerEntry entry);

  // Entries whose name matches the surface. First letter is case-sensitive,
  // the rest is compared case-folded.
  std::vector<const GazetteerEntry*> lookup(const std::string& surface) const;

  // Longest number of tokens a name starting with this word can have.
  std::size_t max_words_from(const std::string& first_word) const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<GazetteerEntry>& entries() const { return entries_; }

  // Display name of a place in the requested language, falling back to any
  // name row of the place.
  std::string display_name(std::int64_t place_id, const std::string& language) const;

 private:
  static std::string key_of(std::string_view name);
  std::vector<GazetteerEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_key_;
  std::unordered_map<std::string, std::size_t> first_word_span_;
  std::unordered_set<std::string> seen_rows_;
};

// TSV rows: place_id \t name \t name_language \t lat \t lon \t country \t
// admin_path(";"-joined) \t importance. Malformed rows report their line.
Gazetteer load_gazetteer(const std::string& path);
Gazetteer load_gazetteer_stream(std::istream& in, const std::string& origin);

GeoStopList load_geostop_list(const std::string& path, std::string language);
SuffixRuleSet load_suffix_rules(const std::string& path, std::string language);

// First rule whose output is found in the gazetteer wins; one application
// per word, no cascades. Returns the candidates plus the reduced form.
struct SuffixMatch {
  std::string reduced;
  std::vector<const GazetteerEntry*> candidates;
};
std::optional<SuffixMatch> strip_suffix(const std::string& word,
                                        const SuffixRuleSet& rules,
                                        const Gazetteer& gaz);

// Homograph resolution cascade: country already seen in the document,
// then bigger place (lower importance class), then smallest country code.
const GazetteerEntry* disambiguate(const std::vector<const GazetteerEntry*>& candidates,
                                   const std::set<std::string>& doc_context);

struct ByteSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Scans uppercase-initial tokens, multi-word longest match first. Geo-stop
// words are skipped as single-word matches but still participate inside
// longer matches. Spans in `claimed` (e.g. person names found earlier in
// the pipeline) are never annotated.
std::vector<Annotation> recognize_places(const Document& doc, const Gazetteer& gaz,
                                         const GeoStopList& stoplist,
                                         const SuffixRuleSet& suffix_rules,
                                         const std::vector<ByteSpan>& claimed = {});

enum class GeoResolution { place, country };
enum class GeoWeighting { raw, tfidf };

// raw: dimension = place_id or country code, weight = mention count.
// tfidf additionally needs per-dimension document frequencies.
SparseVector country_vector(const std::vector<Annotation>& annotations,
                            GeoResolution resolution,
                            GeoWeighting weighting = GeoWeighting::raw,
                            const std::map<std::string, std::size_t>* doc_freq = nullptr,
                            std::size_t n_docs = 0);

// Helper for building geo-stop lists: runs recognition over a word
// frequency list and reports every hit for human triage.
std::vector<std::pair<std::string, std::int64_t>> geostop_candidates(
    const Gazetteer& gaz, const std::vector<std::string>& frequency_list);

}  // namespace mixt

#endif
