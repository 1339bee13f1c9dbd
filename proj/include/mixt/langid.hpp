// Character bigram/trigram language guessing trained from sample corpora.

#ifndef MIXT_LANGID_HPP
#define MIXT_LANGID_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct LanguageProfile {
  std::string language;
  // n-gram -> relative frequency; keys have codepoint length 2 or 3,
  // frequencies per n sum to 1.
  std::map<std::string, double> ngram_freqs;
};

// Builds a profile over the lowercased corpus with "_" word-boundary padding.
// Corpora shorter than 1000 characters are refused.
LanguageProfile train_profile(std::string_view corpus, std::string_view language);

struct IdentifyResult {
  std::string language = "und";
  double score = 0.0;
};

// Cosine of the text's combined bigram+trigram vector against each profile.
// "und" when the best score is below min_score or the winning margin is
// below min_margin. Ties break to the lexicographically smaller code.
IdentifyResult identify(std::string_view text,
                        const std::vector<LanguageProfile>& profiles,
                        double min_score = 0.05, double min_margin = 0.0);

// Profile file format: "LANG <code>" header, then "<ngram>\t<freq>" lines.
void save_profile(const LanguageProfile& p, std::ostream& out);
LanguageProfile load_profile(std::istream& in);

// Shared with names/trigram code: n-gram counts of padded lowercased text.
std::map<std::string, double> char_ngram_counts(std::string_view text, int n);

}  // namespace mixt

#endif
