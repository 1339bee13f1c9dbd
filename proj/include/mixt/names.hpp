// Person-name recognition via cue words plus a learned name database, and
// letter-trigram variant merging into prototype+alias records.

#ifndef MIXT_NAMES_HPP
#define MIXT_NAMES_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct CueLexicon {
  std::string language;
  std::set<std::string> pre_cues;    // President, Professor, ...
  std::set<std::string> post_cues;
  std::set<std::string> particles;   // de, van, al-, lowercase connectors
};

// Sectioned file: [PRE] [POST] [PARTICLES], one entry per line.
CueLexicon load_cue_lexicon(const std::string& path, std::string language);

struct NameVariant {
  std::string surface;
  std::map<std::string, std::size_t> per_language;  // language -> evidence count
  std::size_t count = 0;
  bool enrichment = false;  // foreign-script variant from an alias client;
                            // exempt from the similarity invariant
};

struct NameRecord {
  std::int64_t alias_id = 0;
  std::string prototype;  // most frequent variant, ties lexicographic
  std::vector<NameVariant> variants;
  std::size_t total_frequency = 0;

  const NameVariant* find_variant(const std::string& surface) const;
};

// Dice coefficient over the letter-trigram sets of the lowercased strings
// with "_" marking word boundaries ("_vladimir_putin_").
double trigram_similarity(std::string_view a, std::string_view b);

// Pluggable foreign-script variant source. Lookups are pure; failures must
// be swallowed by the implementation (an empty result is fine).
class AliasEnrichmentClient {
 public:
  virtual ~AliasEnrichmentClient() = default;
  virtual std::vector<std::string> lookup(const std::string& prototype) const = 0;
};

// Offline stub backed by a fixed table.
class StaticAliasClient : public AliasEnrichmentClient {
 public:
  explicit StaticAliasClient(std::map<std::string, std::vector<std::string>> table)
      : table_(std::move(table)) {}
  std::vector<std::string> lookup(const std::string& prototype) const override {
    auto it = table_.find(prototype);
    return it == table_.end() ? std::vector<std::string>{} : it->second;
  }

 private:
  std::map<std::string, std::vector<std::string>> table_;
};

// Single-writer variant store. Matching is against record prototypes only.
class NameDatabase {
 public:
  explicit NameDatabase(double merge_threshold = kDefaultMergeThreshold)
      : threshold_(merge_threshold) {}

  // Adds a recognized surface; merges into the closest record when the
  // prototype similarity reaches the threshold, else opens a new record.
  std::int64_t merge_variant(const std::string& surface, const std::string& language);

  // Record whose prototype or variant matches the surface exactly.
  const NameRecord* find_exact(const std::string& surface) const;
  const NameRecord* record(std::int64_t alias_id) const;
  const std::vector<NameRecord>& records() const { return records_; }

  void add_enrichment(std::int64_t alias_id, const AliasEnrichmentClient& client);

  double threshold() const { return threshold_; }

  // Lines: alias_id \t prototype \t variant \t language \t count
  void save(std::ostream& out) const;
  static NameDatabase load(std::istream& in, double merge_threshold = kDefaultMergeThreshold);

  // Oracle-validated default: every Table-style Latin-script variant pair
  // of one person stays above it while a bare surname does not.
  static constexpr double kDefaultMergeThreshold = 0.5;

 private:
  void elect_prototype(NameRecord& r);
  double threshold_;
  std::int64_t next_id_ = 1;
  std::vector<NameRecord> records_;
};

// Cue-adjacent sequences of >=2 uppercase-initial tokens (particles allowed
// between) plus cue-free matches against the database. Recognized surfaces
// are merged into the database, and annotations carry the alias_id.
std::vector<Annotation> recognize_names(const Document& doc, const CueLexicon& cues,
                                        NameDatabase& db);

struct NameCorpusStats {
  std::map<std::int64_t, std::size_t> docs_with_alias;
  std::size_t total_docs = 0;
};

// dimension = alias_id, weight = tfidf. Falls back to raw counts (with a
// warning) when corpus statistics are missing.
SparseVector name_vector(const std::vector<Annotation>& annotations,
                         const NameCorpusStats* corpus_stats = nullptr);

}  // namespace mixt

#endif
