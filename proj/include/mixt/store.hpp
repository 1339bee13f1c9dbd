// Persistence of extracted document metadata with structured queries, plus
// stand-off annotation export. Append-only log file, indices in memory.

#ifndef MIXT_STORE_HPP
#define MIXT_STORE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct PlaceMention {
  std::int64_t place_id = 0;
  std::string country;
  double lat = 0.0, lon = 0.0;
  std::size_t count = 0;
};

struct ProductMention {
  std::string code;
  std::string supergroup;
  std::size_t count = 0;
};

struct NameMention {
  std::int64_t alias_id = 0;
  std::size_t count = 0;
};

struct DescriptorScore {
  std::int64_t id = 0;
  double score = 0.0;
};

struct KeywordScore {
  std::string term;
  double keyness = 0.0;
};

struct DocumentRecord {
  std::string id;
  std::string language = "und";
  std::string source;
  std::string reference_date;  // YYYY-MM-DD or empty
  std::vector<PlaceMention> places;
  std::vector<ProductMention> products;
  std::vector<std::string> dates;  // normalized DD-strings
  std::vector<NameMention> names;
  std::vector<DescriptorScore> descriptors;
  std::vector<KeywordScore> keywords;

  void validate() const;  // date shape, non-empty id
};

std::string serialize_record(const DocumentRecord& r);
DocumentRecord parse_record(const std::string& line);

struct Query {
  std::optional<std::string> product_code_prefix;
  std::optional<std::string> supergroup;
  std::optional<std::string> country;
  std::optional<std::string> date_from;  // 8-digit, inclusive
  std::optional<std::string> date_to;
  std::optional<std::int64_t> alias_id;
  std::optional<std::int64_t> descriptor_id;
  std::optional<std::string> language;
};

class Store {
 public:
  // Opens (or creates) the store directory and replays its log.
  explicit Store(std::string directory);

  // Appends the record; a duplicate id replaces the prior record.
  std::string ingest(const DocumentRecord& record);

  std::optional<DocumentRecord> fetch(const std::string& id) const;
  std::vector<std::string> query(const Query& q) const;
  std::size_t size() const { return records_.size(); }

  const std::string& log_path() const { return log_path_; }

 private:
  std::string directory_;
  std::string log_path_;
  std::map<std::string, DocumentRecord> records_;
};

// One line per annotation: doc_id \t kind \t offset \t length \t surface \t
// normalized \t aux("k=v;"-joined), with a header line.
std::string export_standoff(const std::string& doc_id,
                            const std::vector<Annotation>& annotations);
std::vector<Annotation> parse_standoff(const std::string& table,
                                       std::string* doc_id = nullptr);

}  // namespace mixt

#endif
