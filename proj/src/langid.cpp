#include "mixt/langid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mixt/utf8.hpp"

namespace mixt {

namespace {

// Lowercased codepoints with word runs separated by a single '_' and one
// '_' at each end: "New York" -> _new_york_
std::vector<utf8::codepoint> padded_points(std::string_view text) {
  std::vector<utf8::codepoint> out;
  out.push_back('_');
  std::size_t i = 0;
  while (i < text.size()) {
    utf8::codepoint cp = utf8::decode(text, i);
    if (utf8::is_letter(cp) || utf8::is_digit(cp))
      out.push_back(utf8::to_lower(cp));
    else if (out.back() != '_')
      out.push_back('_');
  }
  if (out.back() != '_') out.push_back('_');
  return out;
}

}  // namespace

std::map<std::string, double> char_ngram_counts(std::string_view text, int n) {
  std::map<std::string, double> counts;
  auto pts = padded_points(text);
  if (static_cast<int>(pts.size()) < n || pts.size() <= 2) return counts;
  for (std::size_t i = 0; i + n <= pts.size(); ++i) {
    bool all_pad = true;
    for (int k = 0; k < n; ++k)
      if (pts[i + k] != '_') all_pad = false;
    if (all_pad) continue;
    std::string key;
    for (int k = 0; k < n; ++k) utf8::encode(pts[i + k], key);
    counts[key] += 1.0;
  }
  return counts;
}

namespace {

// Relative frequencies per n, merged into one map.
std::map<std::string, double> combined_freqs(std::string_view text) {
  std::map<std::string, double> out;
  for (int n : {2, 3}) {
    auto counts = char_ngram_counts(text, n);
    double total = 0.0;
    for (const auto& [_, c] : counts) total += c;
    if (total == 0.0) continue;
    for (const auto& [k, c] : counts) out[k] = c / total;
  }
  return out;
}

SparseVector as_vector(const std::map<std::string, double>& freqs) {
  SparseVector v("ngram");
  for (const auto& [k, f] : freqs) v.add(k, f);
  return v;
}

}  // namespace

LanguageProfile train_profile(std::string_view corpus, std::string_view language) {
  std::size_t chars = utf8::points(corpus).size();
  if (chars < 1000)
    throw ResourceError("language profile corpus too short (" +
                        std::to_string(chars) + " < 1000 characters)");
  LanguageProfile p;
  p.language = std::string(language);
  p.ngram_freqs = combined_freqs(corpus);
  return p;
}

IdentifyResult identify(std::string_view text,
                        const std::vector<LanguageProfile>& profiles,
                        double min_score, double min_margin) {
  if (profiles.empty()) throw UsageError("identify: no language profiles loaded");
  IdentifyResult result;
  SparseVector doc = as_vector(combined_freqs(text));
  if (doc.empty()) return result;

  double best = -1.0, second = -1.0;
  std::string best_lang;
  for (const auto& p : profiles) {
    double s = cosine(doc, as_vector(p.ngram_freqs));
    if (s > best || (s == best && p.language < best_lang)) {
      if (p.language != best_lang) second = best;
      best = s;
      best_lang = p.language;
    } else if (s > second) {
      second = s;
    }
  }
  if (best < min_score) return result;
  if (second >= 0.0 && best - second < min_margin) return result;
  result.language = best_lang;
  result.score = best;
  return result;
}

void save_profile(const LanguageProfile& p, std::ostream& out) {
  out << "LANG " << p.language << "\n";
  for (const auto& [ngram, freq] : p.ngram_freqs) {
    std::ostringstream v;
    v.precision(17);
    v << freq;
    out << ngram << "\t" << v.str() << "\n";
  }
}

LanguageProfile load_profile(std::istream& in) {
  LanguageProfile p;
  std::string line;
  if (!std::getline(in, line) || line.rfind("LANG ", 0) != 0)
    throw ResourceError("profile file: missing LANG header");
  p.language = line.substr(5);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ResourceError("profile file: malformed line: " + line);
    p.ngram_freqs[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
  }
  return p;
}

}  // namespace mixt
