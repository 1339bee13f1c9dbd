#include "mixt/nomenclature.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mixt/utf8.hpp"

namespace mixt {

namespace {

std::size_t word_count(std::string_view s) {
  std::size_t n = 1;
  for (char c : s)
    if (c == ' ') ++n;
  return n;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

}  // namespace

void ProductDictionary::add(ProductTerm term) {
  term.term = utf8::fold(term.term);
  if (by_term_.count(term.term)) return;  // one term -> exactly one code
  std::string first_word = term.term.substr(0, term.term.find(' '));
  auto& span = first_word_span_[first_word];
  span = std::max(span, word_count(term.term));
  code_supergroup_[term.code] = term.supergroup;
  by_term_[term.term] = terms_.size();
  terms_.push_back(std::move(term));
}

const ProductTerm* ProductDictionary::find(const std::string& term) const {
  auto it = by_term_.find(term);
  return it == by_term_.end() ? nullptr : &terms_[it->second];
}

std::size_t ProductDictionary::max_words_from(const std::string& first_word) const {
  auto it = first_word_span_.find(first_word);
  return it == first_word_span_.end() ? 0 : it->second;
}

const std::string& ProductDictionary::supergroup_of(const std::string& code) const {
  static const std::string empty;
  auto it = code_supergroup_.find(code);
  return it == code_supergroup_.end() ? empty : it->second;
}

std::string ProductDictionary::display_term(const std::string& code,
                                            const std::string& language) const {
  std::string fallback;
  for (const auto& t : terms_) {
    if (t.code != code) continue;
    if (t.term_language == language) return t.term;
    if (fallback.empty()) fallback = t.term;
  }
  return fallback;
}

ProductDictionary load_product_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open product dictionary: " + path);
  ProductDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto p1 = line.find('|');
    auto p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
    if (p2 == std::string::npos)
      throw ResourceError(path + ":" + std::to_string(lineno) +
                          ": expected SUPERGROUP|CODE|TERM");
    ProductTerm t;
    t.supergroup = trim(line.substr(0, p1));
    std::string code = trim(line.substr(p1 + 1, p2 - p1 - 1));
    // drop a trailing subdivision field such as "0401000000 80"
    auto sp = code.find(' ');
    if (sp != std::string::npos) code.resize(sp);
    t.code = code;
    std::string rest = trim(line.substr(p2 + 1));
    auto p3 = rest.find('|');
    if (p3 != std::string::npos) {
      t.term = trim(rest.substr(0, p3));
      t.term_language = trim(rest.substr(p3 + 1));
    } else {
      t.term = rest;
    }
    if (t.code.empty() || t.term.empty() ||
        t.code.size() > 10 ||
        !std::all_of(t.code.begin(), t.code.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ResourceError(path + ":" + std::to_string(lineno) + ": malformed row");
    dict.add(std::move(t));
  }
  return dict;
}

ProductStopList load_product_stoplist(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open product stop list: " + path);
  ProductStopList list;
  list.language = std::move(language);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    list.words.insert(utf8::fold(line));
  }
  return list;
}

namespace {

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto hit = s.find(sep, pos);
    if (hit == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, hit - pos));
    pos = hit + sep.size();
  }
}

void push_unique(std::vector<std::string>& out, std::string term) {
  term = trim(std::move(term));
  if (term.empty()) return;
  if (std::find(out.begin(), out.end(), term) == out.end()) out.push_back(std::move(term));
}

}  // namespace

std::vector<std::string> expand_description(const std::string& description) {
  std::string desc = utf8::fold(trim(description));
  std::vector<std::string> out;
  if (desc.empty()) return out;

  auto segments = split_on(desc, ",");
  for (auto& s : segments) s = trim(s);

  // trailing adjective alternation: ", fresh or chilled"
  std::vector<std::string> adjectives;
  if (segments.size() > 1) {
    const std::string& last = segments.back();
    if (last.find(" or ") != std::string::npos && last.find(" and ") == std::string::npos) {
      for (auto& a : split_on(last, " or ")) push_unique(adjectives, a);
      segments.pop_back();
    }
  }

  std::vector<std::string> nouns;
  for (const auto& seg : segments) {
    for (auto& part : split_on(seg, " and ")) {
      std::string noun = trim(part);
      if (noun.rfind("other ", 0) == 0) noun = noun.substr(6);
      push_unique(nouns, noun);
    }
  }

  if (nouns.empty()) {
    std::cerr << "warning: unparseable nomenclature heading: " << description << "\n";
    out.push_back(desc);
    return out;
  }

  for (const auto& adj : adjectives)
    for (const auto& noun : nouns) push_unique(out, adj + " " + noun);
  for (const auto& noun : nouns) push_unique(out, noun);  // underspecified terms
  return out;
}

std::vector<Annotation> recognize_products(const Document& doc,
                                           const ProductDictionary& dict,
                                           const ProductStopList& stoplist) {
  auto tokens = tokenize(doc.text, doc.language);
  std::vector<Annotation> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::string first = utf8::fold(tokens[i].surface);
    std::size_t span = dict.max_words_from(first);
    if (span == 0) { ++i; continue; }
    span = std::min(span, tokens.size() - i);

    const ProductTerm* hit = nullptr;
    std::size_t hit_len = 0;
    for (std::size_t n = span; n >= 1; --n) {
      std::string phrase = first;
      for (std::size_t k = 1; k < n; ++k) phrase += " " + utf8::fold(tokens[i + k].surface);
      if (n == 1 && stoplist.contains(phrase)) continue;
      if (const ProductTerm* t = dict.find(phrase)) {
        hit = t;
        hit_len = n;
        break;
      }
    }
    if (hit == nullptr) { ++i; continue; }

    const std::size_t off = tokens[i].offset;
    const std::size_t len =
        tokens[i + hit_len - 1].offset + tokens[i + hit_len - 1].length - off;
    Annotation a;
    a.kind = AnnotationKind::product;
    a.offset = off;
    a.length = len;
    a.surface = doc.text.substr(off, len);
    a.normalized = hit->code;
    a.aux.emplace_back("code", hit->code);
    a.aux.emplace_back("supergroup", hit->supergroup);
    a.aux.emplace_back("term", hit->term);
    out.push_back(std::move(a));
    i += hit_len;
  }
  return out;
}

SparseVector product_vector(const std::vector<Annotation>& annotations,
                            ProductLevel level) {
  SparseVector v(level == ProductLevel::code ? "product" : "supergroup");
  for (const auto& a : annotations) {
    if (a.kind != AnnotationKind::product)
      throw UsageError("product_vector: non-product annotation");
    v.add(level == ProductLevel::code ? a.aux_value("code") : a.aux_value("supergroup"), 1.0);
  }
  return v;
}

std::vector<std::pair<std::string, std::string>> stoplist_candidates(
    const ProductDictionary& dict, const std::vector<std::string>& frequency_list) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& word : frequency_list) {
    if (const ProductTerm* t = dict.find(utf8::fold(word)))
      out.emplace_back(word, t->code);
  }
  return out;
}

}  // namespace mixt
