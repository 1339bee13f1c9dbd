// Log-likelihood keyword extraction against reference corpus frequencies,
// plus keyword-density sentence-extraction summarization.

#ifndef MIXT_KEYWORDS_HPP
#define MIXT_KEYWORDS_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct ReferenceFrequencyList {
  std::string language;
  std::size_t total_tokens = 0;  // true corpus size; the list may be truncated
  std::map<std::string, std::size_t> freq;
};

// Header "TOTAL <count>", then "word \t count" lines.
ReferenceFrequencyList load_reference_list(const std::string& path, std::string language);

std::set<std::string> load_stopwords(const std::string& path);

struct Keyword {
  std::string term;
  double keyness = 0.0;
  std::size_t tf = 0;
};

// Two-term G2: E1 = n1(a+b)/(n1+n2), E2 = n2(a+b)/(n1+n2),
// G2 = 2*(a*ln(a/E1) + b*ln(b/E2)), 0*ln(0) = 0.
double log_likelihood(double a, double b, double n1, double n2);

// Scores every non-stop token type; keeps terms overrepresented in the
// document (a/n1 > b/n2); top k by keyness, ties alphabetical.
std::vector<Keyword> extract_keywords(const Document& doc,
                                      const ReferenceFrequencyList& ref,
                                      const std::set<std::string>& stopwords,
                                      std::size_t k = 20);

SparseVector keyword_vector(const std::vector<Keyword>& keywords);

struct SentenceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Top n sentences by keyness density, returned in document order.
std::vector<SentenceSpan> summarize(const Document& doc,
                                    const std::vector<Keyword>& keywords,
                                    std::size_t n_sentences);

}  // namespace mixt

#endif
