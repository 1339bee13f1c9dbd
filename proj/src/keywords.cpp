#include "mixt/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mixt/utf8.hpp"

namespace mixt {

ReferenceFrequencyList load_reference_list(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open reference frequency list: " + path);
  ReferenceFrequencyList list;
  list.language = std::move(language);
  std::string line;
  if (!std::getline(in, line) || line.rfind("TOTAL ", 0) != 0)
    throw ResourceError(path + ": missing TOTAL header");
  list.total_tokens = std::stoull(line.substr(6));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ResourceError(path + ":" + std::to_string(lineno) + ": expected 'word\\tcount'");
    std::size_t count = std::stoull(line.substr(tab + 1));
    if (count == 0)
      throw ResourceError(path + ":" + std::to_string(lineno) + ": zero count");
    list.freq[utf8::fold(line.substr(0, tab))] = count;
  }
  return list;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open stop word list: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.insert(utf8::fold(line));
  }
  return out;
}

double log_likelihood(double a, double b, double n1, double n2) {
  if (n1 <= 0 || n2 <= 0 || a < 0 || b < 0 || a > n1 || b > n2)
    throw UsageError("log_likelihood: counts out of range");
  const double e1 = n1 * (a + b) / (n1 + n2);
  const double e2 = n2 * (a + b) / (n1 + n2);
  double g = 0.0;
  if (a > 0) g += a * std::log(a / e1);
  if (b > 0) g += b * std::log(b / e2);
  g *= 2.0;
  return g < 0.0 ? 0.0 : g;  // clamp -0.0 and rounding residue at the null
}

std::vector<Keyword> extract_keywords(const Document& doc,
                                      const ReferenceFrequencyList& ref,
                                      const std::set<std::string>& stopwords,
                                      std::size_t k) {
  auto toks = tokenize(doc.text, doc.language);
  std::map<std::string, std::size_t> tf;
  std::size_t n1 = 0;
  for (const auto& t : toks) {
    std::string folded = utf8::fold(t.surface);
    ++n1;
    if (stopwords.count(folded)) continue;
    ++tf[folded];
  }
  std::vector<Keyword> scored;
  if (n1 == 0) return scored;
  const double n2 = static_cast<double>(ref.total_tokens);
  for (const auto& [term, a] : tf) {
    auto it = ref.freq.find(term);
    const double b = it == ref.freq.end() ? 0.0 : static_cast<double>(it->second);
    const double ad = static_cast<double>(a);
    if (ad / static_cast<double>(n1) <= b / n2) continue;  // not overrepresented
    double g = log_likelihood(ad, b, static_cast<double>(n1), n2);
    if (g <= 0.0) continue;
    scored.push_back({term, g, a});
  }
  std::sort(scored.begin(), scored.end(), [](const Keyword& x, const Keyword& y) {
    if (x.keyness != y.keyness) return x.keyness > y.keyness;
    return x.term < y.term;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

SparseVector keyword_vector(const std::vector<Keyword>& keywords) {
  SparseVector v("keyword");
  for (const auto& kw : keywords) v.add(kw.term, kw.keyness);
  return v;
}

namespace {

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t end = i + 1;
      out.push_back({start, end - start});
      while (end < text.size() && (text[end] == ' ' || text[end] == '\n' ||
                                   text[end] == '\t' || text[end] == '\r'))
        ++end;
      start = end;
      i = end - 1;
    }
  }
  if (start < text.size()) out.push_back({start, text.size() - start});
  return out;
}

}  // namespace

std::vector<SentenceSpan> summarize(const Document& doc,
                                    const std::vector<Keyword>& keywords,
                                    std::size_t n_sentences) {
  std::map<std::string, double> keyness;
  for (const auto& kw : keywords) keyness[kw.term] = kw.keyness;

  auto sentences = split_sentences(doc.text);
  struct Scored {
    SentenceSpan span;
    double score;
  };
  std::vector<Scored> scored;
  for (const auto& s : sentences) {
    auto toks = tokenize(std::string_view(doc.text).substr(s.offset, s.length), doc.language);
    if (toks.empty()) continue;
    double sum = 0.0;
    for (const auto& t : toks) {
      auto it = keyness.find(utf8::fold(t.surface));
      if (it != keyness.end()) sum += it->second;
    }
    scored.push_back({s, sum / static_cast<double>(toks.size())});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.span.offset < b.span.offset;  // earlier offset wins ties
  });
  if (scored.size() > n_sentences) scored.resize(n_sentences);
  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.span.offset < b.span.offset; });
  std::vector<SentenceSpan> out;
  for (const auto& s : scored) out.push_back(s.span);
  return out;
}

}  // namespace mixt
