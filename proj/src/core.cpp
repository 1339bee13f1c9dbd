#include "mixt/core.hpp"

#include <cmath>

#include "mixt/utf8.hpp"

namespace mixt {

std::string_view to_string(AnnotationKind k) {
  switch (k) {
    case AnnotationKind::place: return "place";
    case AnnotationKind::product: return "product";
    case AnnotationKind::date: return "date";
    case AnnotationKind::name: return "name";
    case AnnotationKind::keyword: return "keyword";
    case AnnotationKind::descriptor: return "descriptor";
  }
  return "keyword";
}

std::optional<AnnotationKind> annotation_kind_from(std::string_view s) {
  if (s == "place") return AnnotationKind::place;
  if (s == "product") return AnnotationKind::product;
  if (s == "date") return AnnotationKind::date;
  if (s == "name") return AnnotationKind::name;
  if (s == "keyword") return AnnotationKind::keyword;
  if (s == "descriptor") return AnnotationKind::descriptor;
  return std::nullopt;
}

std::string Annotation::aux_value(std::string_view key) const {
  for (const auto& [k, v] : aux)
    if (k == key) return v;
  return {};
}

double SparseVector::get(const std::string& dim) const {
  auto it = entries_.find(dim);
  return it == entries_.end() ? 0.0 : it->second;
}

void SparseVector::add(const std::string& dim, double weight) {
  if (weight < 0.0) throw UsageError("negative weight in sparse vector");
  if (weight == 0.0) return;
  entries_[dim] += weight;
}

void SparseVector::set(const std::string& dim, double weight) {
  if (weight < 0.0) throw UsageError("negative weight in sparse vector");
  if (weight == 0.0)
    entries_.erase(dim);
  else
    entries_[dim] = weight;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [_, w] : entries_) s += w * w;
  return std::sqrt(s);
}

SparseVector SparseVector::scaled(double factor) const {
  if (factor < 0.0) throw UsageError("negative scale factor");
  SparseVector out(space_);
  for (const auto& [d, w] : entries_) out.set(d, w * factor);
  return out;
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  if (space_ != other.space_) throw UsageError("sparse vector space mismatch");
  for (const auto& [d, w] : other.entries_) add(d, w);
  return *this;
}

const SparseVector* FacetedRepresentation::facet(const std::string& name) const {
  auto it = facets.find(name);
  return it == facets.end() ? nullptr : &it->second;
}

void FacetedRepresentation::set_facet(const std::string& name, SparseVector v) {
  facets[name] = std::move(v);
}

namespace {

bool is_word_cp(utf8::codepoint cp) {
  return utf8::is_letter(cp) || utf8::is_digit(cp);
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::string_view) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = i;
    utf8::codepoint cp = utf8::decode(text, i);
    if (!is_word_cp(cp)) continue;

    const bool upper0 = utf8::is_upper(cp);
    bool all_numeric = utf8::is_digit(cp);
    bool any_digit = utf8::is_digit(cp);
    std::size_t end = i;
    while (i < text.size()) {
      std::size_t probe = i;
      utf8::codepoint next = utf8::decode(text, probe);
      if (is_word_cp(next)) {
        if (!utf8::is_digit(next)) all_numeric = false;
        else any_digit = true;
        end = probe;
        i = probe;
        continue;
      }
      // Separators are part of the token only between word characters:
      // hyphens join words, '.'/','/'/'/'-' join digit groups.
      bool joiner = false;
      if (next == '-') joiner = true;
      if ((next == '.' || next == ',' || next == '/') && any_digit) joiner = true;
      if (joiner && probe < text.size()) {
        std::size_t after = probe;
        utf8::codepoint following = utf8::decode(text, after);
        bool ok = is_word_cp(following);
        if (next != '-' && !utf8::is_digit(following)) ok = false;
        if (ok) {
          if (next == '-' ) all_numeric = all_numeric && utf8::is_digit(following);
          i = probe;
          end = probe;  // separator included; extended again by next word char
          continue;
        }
      }
      break;
    }
    Token t;
    t.offset = start;
    t.length = end - start;
    t.surface = std::string(text.substr(start, t.length));
    t.is_uppercase_initial = upper0;
    // numeric iff the separator-stripped form is all digits (and non-empty)
    bool numeric = any_digit;
    for (char c : t.surface) {
      if (c == '.' || c == ',' || c == '/' || c == '-') continue;
      if (c < '0' || c > '9') { numeric = false; break; }
    }
    t.is_numeric = numeric;
    (void)all_numeric;
    out.push_back(std::move(t));
  }
  return out;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.space() != b.space()) throw UsageError("cosine: space mismatch");
  if (a.empty() || b.empty()) return 0.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double dot = 0.0;
  for (const auto& [d, w] : small.entries()) dot += w * large.get(d);
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  double c = dot / denom;
  if (c > 1.0) c = 1.0;
  if (c < 0.0) c = 0.0;
  return c;
}

double tfidf(double tf, std::size_t df, std::size_t n_docs) {
  if (df == 0 || df > n_docs) throw UsageError("tfidf: df out of range");
  if (tf < 0.0) throw UsageError("tfidf: negative tf");
  if (tf == 0.0) return 0.0;
  return tf * std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

}  // namespace mixt
