// Shared document model: tokens, stand-off annotations, sparse vectors and
// the weighting primitives used by every recognition module.

#ifndef MIXT_CORE_HPP
#define MIXT_CORE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mixt {

struct CalendarDate {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31
};

struct Document {
  std::string id;
  std::string text;                       // UTF-8
  std::string language = "und";           // ISO 639-1 or "und"
  std::optional<CalendarDate> reference_date;
  std::string source;
};

struct Token {
  std::string surface;
  std::size_t offset = 0;  // byte offset into the document text
  std::size_t length = 0;  // byte count
  bool is_uppercase_initial = false;
  bool is_numeric = false;
};

enum class AnnotationKind { place, product, date, name, keyword, descriptor };

std::string_view to_string(AnnotationKind k);
std::optional<AnnotationKind> annotation_kind_from(std::string_view s);

struct Annotation {
  AnnotationKind kind = AnnotationKind::keyword;
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string surface;
  std::string normalized;  // kind-specific canonical value, never empty
  std::vector<std::pair<std::string, std::string>> aux;

  std::string aux_value(std::string_view key) const;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weight map over a named dimension space. Zero weights are never stored;
// mixing spaces is a usage error.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::string space) : space_(std::move(space)) {}

  const std::string& space() const { return space_; }
  const std::map<std::string, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double get(const std::string& dim) const;
  void add(const std::string& dim, double weight);  // weight < 0 rejected
  void set(const std::string& dim, double weight);

  double norm() const;
  SparseVector scaled(double factor) const;
  SparseVector& operator+=(const SparseVector& other);

 private:
  std::string space_;
  std::map<std::string, double> entries_;
};

// Facet-name -> vector bundle used as the cross-lingual interlingua.
// Each facet vector's space equals its facet name.
struct FacetedRepresentation {
  std::map<std::string, SparseVector> facets;

  const SparseVector* facet(const std::string& name) const;
  void set_facet(const std::string& name, SparseVector v);
};

// Splits text into maximal letter/digit runs. Hyphenated words stay one
// token, apostrophes split. Number tokens keep interior grouping and
// decimal separators ("1,000.00"); the numeric flag is computed on the
// separator-stripped form.
std::vector<Token> tokenize(std::string_view text, std::string_view lang = "und");

double cosine(const SparseVector& a, const SparseVector& b);

// tf * ln(n_docs / df)
double tfidf(double tf, std::size_t df, std::size_t n_docs);

}  // namespace mixt

#endif
