#include "mixt/gazetteer.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "mixt/utf8.hpp"

namespace mixt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t word_count(std::string_view name) {
  std::size_t n = 1;
  for (char c : name)
    if (c == ' ') ++n;
  return n;
}

}  // namespace

std::string Gazetteer::key_of(std::string_view name) {
  // first codepoint verbatim, rest case-folded
  if (name.empty()) return {};
  std::size_t i = 0;
  utf8::decode(name, i);
  std::string key(name.substr(0, i));
  key += utf8::fold(name.substr(i));
  return key;
}

void Gazetteer::add(GazetteerEntry entry) {
  std::ostringstream row;
  row << entry.place_id << '\t' << entry.name << '\t' << entry.name_language;
  if (!seen_rows_.insert(row.str()).second) return;  // duplicate row

  std::string key = key_of(entry.name);
  std::string first_word = key.substr(0, key.find(' '));
  std::size_t words = word_count(entry.name);
  auto& span = first_word_span_[key_of(first_word)];
  span = std::max(span, words);
  by_key_[key].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

std::vector<const GazetteerEntry*> Gazetteer::lookup(const std::string& surface) const {
  std::vector<const GazetteerEntry*> out;
  auto it = by_key_.find(key_of(surface));
  if (it == by_key_.end()) return out;
  for (std::size_t idx : it->second) out.push_back(&entries_[idx]);
  return out;
}

std::size_t Gazetteer::max_words_from(const std::string& first_word) const {
  auto it = first_word_span_.find(key_of(first_word));
  return it == first_word_span_.end() ? 0 : it->second;
}

std::string Gazetteer::display_name(std::int64_t place_id, const std::string& language) const {
  std::string fallback;
  for (const auto& e : entries_) {
    if (e.place_id != place_id) continue;
    if (e.name_language == language) return e.name;
    if (fallback.empty() || e.name_language == "*") fallback = e.name;
  }
  return fallback;
}

Gazetteer load_gazetteer_stream(std::istream& in, const std::string& origin) {
  Gazetteer gaz;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 8)
      throw ResourceError(origin + ":" + std::to_string(lineno) +
                          ": expected 8 tab-separated fields");
    try {
      GazetteerEntry e;
      e.place_id = std::stoll(fields[0]);
      e.name = fields[1];
      e.name_language = fields[2];
      e.latitude = std::stod(fields[3]);
      e.longitude = std::stod(fields[4]);
      e.country = fields[5];
      if (!fields[6].empty()) e.admin_path = split(fields[6], ';');
      e.importance = std::stoi(fields[7]);
      if (e.name.empty() || e.latitude < -90 || e.latitude > 90 ||
          e.longitude < -180 || e.longitude > 180)
        throw std::invalid_argument("field out of range");
      gaz.add(std::move(e));
    } catch (const std::exception&) {
      throw ResourceError(origin + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  return gaz;
}

Gazetteer load_gazetteer(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open gazetteer: " + path);
  return load_gazetteer_stream(in, path);
}

GeoStopList load_geostop_list(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open geo-stop list: " + path);
  GeoStopList list;
  list.language = std::move(language);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    list.words.insert(line);
  }
  return list;
}

SuffixRuleSet load_suffix_rules(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open suffix rules: " + path);
  SuffixRuleSet set;
  set.language = std::move(language);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ResourceError(path + ": suffix rule needs 'pattern\\treplacement': " + line);
    set.rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return set;
}

std::optional<SuffixMatch> strip_suffix(const std::string& word,
                                        const SuffixRuleSet& rules,
                                        const Gazetteer& gaz) {
  for (const auto& rule : rules.rules) {
    std::regex re(rule.pattern + "$");
    std::string candidate = std::regex_replace(word, re, rule.replacement);
    if (candidate == word || candidate.empty()) continue;
    auto hits = gaz.lookup(candidate);
    if (!hits.empty()) return SuffixMatch{candidate, std::move(hits)};
  }
  return std::nullopt;
}

const GazetteerEntry* disambiguate(const std::vector<const GazetteerEntry*>& candidates,
                                   const std::set<std::string>& doc_context) {
  if (candidates.empty()) throw UsageError("disambiguate: no candidates");
  auto better = [&](const GazetteerEntry* a, const GazetteerEntry* b) {
    const bool a_ctx = doc_context.count(a->country) > 0;
    const bool b_ctx = doc_context.count(b->country) > 0;
    if (a_ctx != b_ctx) return a_ctx;
    if (a->importance != b->importance) return a->importance < b->importance;
    if (a->country != b->country) return a->country < b->country;
    return a->place_id < b->place_id;
  };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](auto* a, auto* b) { return better(a, b); });
}

namespace {

struct RawMatch {
  std::size_t tok_begin = 0;
  std::size_t tok_end = 0;  // exclusive
  std::size_t offset = 0;
  std::size_t length = 0;
  std::vector<const GazetteerEntry*> candidates;
};

bool overlaps(std::size_t off, std::size_t len, const std::vector<ByteSpan>& spans) {
  for (const auto& s : spans)
    if (off < s.offset + s.length && s.offset < off + len) return true;
  return false;
}

}  // namespace

std::vector<Annotation> recognize_places(const Document& doc, const Gazetteer& gaz,
                                         const GeoStopList& stoplist,
                                         const SuffixRuleSet& suffix_rules,
                                         const std::vector<ByteSpan>& claimed) {
  auto tokens = tokenize(doc.text, doc.language);
  std::vector<RawMatch> matches;

  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!tokens[i].is_uppercase_initial) { ++i; continue; }

    std::size_t span = std::max<std::size_t>(gaz.max_words_from(tokens[i].surface), 1);
    span = std::min(span, tokens.size() - i);

    RawMatch found;
    bool have = false;
    for (std::size_t n = span; n >= 1 && !have; --n) {
      std::string phrase = tokens[i].surface;
      for (std::size_t k = 1; k < n; ++k) phrase += " " + tokens[i + k].surface;
      const std::size_t off = tokens[i].offset;
      const std::size_t len = tokens[i + n - 1].offset + tokens[i + n - 1].length - off;
      if (overlaps(off, len, claimed)) continue;
      // geo-stop words only block complete single-word matches
      if (n == 1 && stoplist.contains(phrase)) continue;

      auto hits = gaz.lookup(phrase);
      if (hits.empty() && n == 1) {
        if (auto sm = strip_suffix(phrase, suffix_rules, gaz)) hits = sm->candidates;
      }
      if (hits.empty() && n > 1) {
        // inflected last word of a multi-word name ("New Yorgile")
        for (const auto& rule : suffix_rules.rules) {
          std::regex re(rule.pattern + "$");
          std::string candidate = std::regex_replace(phrase, re, rule.replacement);
          if (candidate == phrase || candidate.empty()) continue;
          hits = gaz.lookup(candidate);
          if (!hits.empty()) break;
        }
      }
      if (!hits.empty()) {
        found = RawMatch{i, i + n, off, len, std::move(hits)};
        have = true;
      }
    }
    if (have) {
      matches.push_back(std::move(found));
      i = matches.back().tok_end;
    } else {
      ++i;
    }
  }

  // pass 1: countries of unambiguous mentions form the document context
  std::set<std::string> context;
  for (const auto& m : matches) {
    std::set<std::string> countries;
    for (const auto* e : m.candidates) countries.insert(e->country);
    if (countries.size() == 1) context.insert(*countries.begin());
  }

  std::vector<Annotation> out;
  for (const auto& m : matches) {
    const GazetteerEntry* e = disambiguate(m.candidates, context);
    Annotation a;
    a.kind = AnnotationKind::place;
    a.offset = m.offset;
    a.length = m.length;
    a.surface = doc.text.substr(m.offset, m.length);
    a.normalized = e->name;
    a.aux.emplace_back("place_id", std::to_string(e->place_id));
    a.aux.emplace_back("country", e->country);
    {
      std::ostringstream lat, lon;
      lat << e->latitude;
      lon << e->longitude;
      a.aux.emplace_back("lat", lat.str());
      a.aux.emplace_back("lon", lon.str());
    }
    if (!e->admin_path.empty()) {
      // ',' here: the stand-off aux field reserves ';' as the pair separator
      std::string joined;
      for (const auto& p : e->admin_path) {
        if (!joined.empty()) joined += ",";
        joined += p;
      }
      a.aux.emplace_back("admin_path", joined);
    }
    out.push_back(std::move(a));
  }
  return out;
}

SparseVector country_vector(const std::vector<Annotation>& annotations,
                            GeoResolution resolution, GeoWeighting weighting,
                            const std::map<std::string, std::size_t>* doc_freq,
                            std::size_t n_docs) {
  if (weighting == GeoWeighting::tfidf && (doc_freq == nullptr || n_docs == 0))
    throw UsageError("country_vector: tfidf weighting needs a document-frequency table");
  SparseVector v("country");
  std::map<std::string, double> counts;
  for (const auto& a : annotations) {
    if (a.kind != AnnotationKind::place) throw UsageError("country_vector: non-place annotation");
    std::string dim = resolution == GeoResolution::country ? a.aux_value("country")
                                                           : a.aux_value("place_id");
    counts[dim] += 1.0;
  }
  for (const auto& [dim, tf] : counts) {
    if (weighting == GeoWeighting::raw) {
      v.add(dim, tf);
    } else {
      auto it = doc_freq->find(dim);
      std::size_t df = it == doc_freq->end() ? 1 : it->second;
      v.add(dim, tfidf(tf, df, n_docs));
    }
  }
  return v;
}

std::vector<std::pair<std::string, std::int64_t>> geostop_candidates(
    const Gazetteer& gaz, const std::vector<std::string>& frequency_list) {
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& word : frequency_list) {
    auto hits = gaz.lookup(word);
    if (hits.empty()) {
      // frequency lists are usually lowercased; retry with an uppercase initial
      std::string up = word;
      if (!up.empty()) {
        auto pts = utf8::points(word);
        std::string rebuilt;
        utf8::codepoint first = pts[0];
        if (utf8::is_lower(first)) {
          // uppercase via the lower->upper inverse for ASCII and Latin-1
          if (first >= 'a' && first <= 'z') first -= 0x20;
          else if (first >= 0xE0 && first <= 0xFE && first != 0xF7) first -= 0x20;
        }
        utf8::encode(first, rebuilt);
        std::size_t i = 0;
        utf8::decode(word, i);
        rebuilt += word.substr(i);
        hits = gaz.lookup(rebuilt);
      }
    }
    if (!hits.empty()) out.emplace_back(word, hits.front()->place_id);
  }
  return out;
}

}  // namespace mixt
