// Product term recognition over SUPER-GROUP|CODE|TERM dictionaries with
// stop lists, super-group rollup and a coordination-expansion helper used
// when preparing dictionaries from nomenclature headings.

#ifndef MIXT_NOMENCLATURE_HPP
#define MIXT_NOMENCLATURE_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct ProductTerm {
  std::string supergroup;
  std::string code;   // up to 10 digits, hierarchical by digit pairs
  std::string term;   // lowercase
  std::string term_language = "*";
};

class ProductDictionary {
 public:
  void add(ProductTerm term);

  // Exact lowercase term lookup; nullptr when absent.
  const ProductTerm* find(const std::string& term) const;
  std::size_t max_words_from(const std::string& first_word) const;
  const std::vector<ProductTerm>& terms() const { return terms_; }
  const std::string& supergroup_of(const std::string& code) const;

  // Term of a code in the requested language (for display), if any.
  std::string display_term(const std::string& code, const std::string& language) const;

 private:
  std::vector<ProductTerm> terms_;
  std::unordered_map<std::string, std::size_t> by_term_;
  std::unordered_map<std::string, std::size_t> first_word_span_;
  std::map<std::string, std::string> code_supergroup_;
};

struct ProductStopList {
  std::string language;
  std::set<std::string> words;  // lowercase, exact match

  bool contains(const std::string& w) const { return words.count(w) > 0; }
};

// Lines "SUPERGROUP|CODE|TERM", "#" comments. Codes with a trailing
// subdivision field ("0401000000 80") keep only the 10-digit code.
ProductDictionary load_product_dictionary(const std::string& path);
ProductStopList load_product_stoplist(const std::string& path, std::string language);

// Expands a nomenclature heading of shape "N1, N2, ... and Nk[, A1 or A2]"
// into adjective x noun terms plus each bare noun. Unparseable headings come
// back as a single lowercased term.
std::vector<std::string> expand_description(const std::string& description);

// Case-insensitive longest-match scan over all tokens. Stop-listed words
// never match as single-word terms.
std::vector<Annotation> recognize_products(const Document& doc,
                                           const ProductDictionary& dict,
                                           const ProductStopList& stoplist);

enum class ProductLevel { code, supergroup };

SparseVector product_vector(const std::vector<Annotation>& annotations,
                            ProductLevel level);

// Reports frequency-list words that match a dictionary term, for human
// triage into the stop list or a dictionary amendment.
std::vector<std::pair<std::string, std::string>> stoplist_candidates(
    const ProductDictionary& dict, const std::vector<std::string>& frequency_list);

}  // namespace mixt

#endif
