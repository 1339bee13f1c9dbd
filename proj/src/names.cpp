#include "mixt/names.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "mixt/utf8.hpp"

namespace mixt {

CueLexicon load_cue_lexicon(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open cue lexicon: " + path);
  CueLexicon lex;
  lex.language = std::move(language);
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (section == "PRE") lex.pre_cues.insert(line);
    else if (section == "POST") lex.post_cues.insert(line);
    else if (section == "PARTICLES") lex.particles.insert(utf8::fold(line));
    else throw ResourceError(path + ": entry outside [PRE]/[POST]/[PARTICLES]: " + line);
  }
  for (const auto& p : lex.particles)
    if (lex.pre_cues.count(p) || lex.post_cues.count(p))
      throw ResourceError(path + ": particle overlaps a cue set: " + p);
  return lex;
}

namespace {

std::set<std::string> name_trigrams(std::string_view s) {
  // lowercased, word runs joined by '_', padded with '_' at both ends
  std::vector<utf8::codepoint> pts;
  pts.push_back('_');
  std::size_t i = 0;
  while (i < s.size()) {
    utf8::codepoint cp = utf8::decode(s, i);
    if (utf8::is_letter(cp) || utf8::is_digit(cp))
      pts.push_back(utf8::to_lower(cp));
    else if (pts.back() != '_')
      pts.push_back('_');
  }
  if (pts.back() != '_') pts.push_back('_');
  std::set<std::string> out;
  if (pts.size() < 3 || pts.size() <= 2) return out;
  for (std::size_t k = 0; k + 3 <= pts.size(); ++k) {
    std::string tri;
    utf8::encode(pts[k], tri);
    utf8::encode(pts[k + 1], tri);
    utf8::encode(pts[k + 2], tri);
    out.insert(std::move(tri));
  }
  return out;
}

}  // namespace

double trigram_similarity(std::string_view a, std::string_view b) {
  auto ta = name_trigrams(a);
  auto tb = name_trigrams(b);
  if (ta.empty() && tb.empty()) return a == b ? 1.0 : 0.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : ta)
    if (tb.count(t)) ++inter;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(ta.size() + tb.size());
}

const NameVariant* NameRecord::find_variant(const std::string& surface) const {
  for (const auto& v : variants)
    if (v.surface == surface) return &v;
  return nullptr;
}

void NameDatabase::elect_prototype(NameRecord& r) {
  const NameVariant* best = nullptr;
  for (const auto& v : r.variants) {
    if (v.enrichment) continue;
    if (best == nullptr || v.count > best->count ||
        (v.count == best->count && v.surface < best->surface))
      best = &v;
  }
  if (best != nullptr) r.prototype = best->surface;
}

std::int64_t NameDatabase::merge_variant(const std::string& surface,
                                         const std::string& language) {
  double best = -1.0;
  NameRecord* target = nullptr;
  for (auto& r : records_) {
    double d = trigram_similarity(surface, r.prototype);
    if (d > best) {  // ties keep the lowest alias_id (scan order)
      best = d;
      target = &r;
    }
  }
  if (target == nullptr || best < threshold_) {
    NameRecord r;
    r.alias_id = next_id_++;
    r.prototype = surface;
    NameVariant v;
    v.surface = surface;
    v.per_language[language] = 1;
    v.count = 1;
    r.variants.push_back(std::move(v));
    r.total_frequency = 1;
    records_.push_back(std::move(r));
    return records_.back().alias_id;
  }
  NameVariant* v = nullptr;
  for (auto& existing : target->variants)
    if (existing.surface == surface) v = &existing;
  if (v == nullptr) {
    target->variants.push_back({});
    v = &target->variants.back();
    v->surface = surface;
  }
  ++v->count;
  ++v->per_language[language];
  ++target->total_frequency;
  elect_prototype(*target);
  return target->alias_id;
}

const NameRecord* NameDatabase::find_exact(const std::string& surface) const {
  for (const auto& r : records_)
    if (r.find_variant(surface) != nullptr) return &r;
  return nullptr;
}

const NameRecord* NameDatabase::record(std::int64_t alias_id) const {
  for (const auto& r : records_)
    if (r.alias_id == alias_id) return &r;
  return nullptr;
}

void NameDatabase::add_enrichment(std::int64_t alias_id,
                                  const AliasEnrichmentClient& client) {
  for (auto& r : records_) {
    if (r.alias_id != alias_id) continue;
    for (const auto& foreign : client.lookup(r.prototype)) {
      if (r.find_variant(foreign) != nullptr) continue;
      NameVariant v;
      v.surface = foreign;
      v.enrichment = true;
      r.variants.push_back(std::move(v));
    }
    return;
  }
}

void NameDatabase::save(std::ostream& out) const {
  for (const auto& r : records_) {
    for (const auto& v : r.variants) {
      if (v.per_language.empty()) {
        out << r.alias_id << '\t' << r.prototype << '\t' << v.surface << '\t'
            << (v.enrichment ? "enrichment" : "und") << '\t' << v.count << '\n';
      } else {
        for (const auto& [lang, n] : v.per_language)
          out << r.alias_id << '\t' << r.prototype << '\t' << v.surface << '\t'
              << lang << '\t' << n << '\n';
      }
    }
  }
}

NameDatabase NameDatabase::load(std::istream& in, double merge_threshold) {
  NameDatabase db(merge_threshold);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == '\t') { f.push_back(cur); cur.clear(); }
      else cur.push_back(c);
    }
    f.push_back(cur);
    if (f.size() != 5)
      throw ResourceError("name database line " + std::to_string(lineno) +
                          ": expected 5 tab-separated fields");
    std::int64_t id = std::stoll(f[0]);
    NameRecord* r = nullptr;
    for (auto& existing : db.records_)
      if (existing.alias_id == id) r = &existing;
    if (r == nullptr) {
      db.records_.push_back({});
      r = &db.records_.back();
      r->alias_id = id;
      r->prototype = f[1];
      db.next_id_ = std::max(db.next_id_, id + 1);
    }
    NameVariant* v = nullptr;
    for (auto& existing : r->variants)
      if (existing.surface == f[2]) v = &existing;
    if (v == nullptr) {
      r->variants.push_back({});
      v = &r->variants.back();
      v->surface = f[2];
    }
    std::size_t n = static_cast<std::size_t>(std::stoull(f[4]));
    if (f[3] == "enrichment") {
      v->enrichment = true;
    } else {
      v->per_language[f[3]] += n;
      v->count += n;
      r->total_frequency += n;
    }
  }
  for (auto& r : db.records_) db.elect_prototype(r);
  return db;
}

namespace {

bool is_particle(const Token& t, const CueLexicon& cues) {
  return cues.particles.count(utf8::fold(t.surface)) > 0;
}

// [start, end) token span of >=min uppercase-initial tokens with particles
// allowed between (never first or last)
std::size_t upper_run(const std::vector<Token>& toks, std::size_t start,
                      const CueLexicon& cues) {
  if (start >= toks.size() || !toks[start].is_uppercase_initial) return start;
  std::size_t end = start + 1;
  while (end < toks.size()) {
    if (toks[end].is_uppercase_initial) {
      ++end;
      continue;
    }
    std::size_t p = end;
    while (p < toks.size() && is_particle(toks[p], cues)) ++p;
    if (p > end && p < toks.size() && toks[p].is_uppercase_initial)
      end = p + 1;
    else
      break;
  }
  return end;
}

}  // namespace

std::vector<Annotation> recognize_names(const Document& doc, const CueLexicon& cues,
                                        NameDatabase& db) {
  auto toks = tokenize(doc.text, doc.language);
  struct Span {
    std::size_t begin, end;
  };
  std::vector<Span> spans;

  for (std::size_t i = 0; i < toks.size();) {
    if (!toks[i].is_uppercase_initial) { ++i; continue; }

    // (a) cue-adjacent runs; leading cue words open the run but stay outside it
    bool pre_cued = i > 0 && cues.pre_cues.count(toks[i - 1].surface) > 0;
    while (cues.pre_cues.count(toks[i].surface) > 0 && i + 1 < toks.size() &&
           toks[i + 1].is_uppercase_initial) {
      pre_cued = true;
      ++i;
    }
    std::size_t end = upper_run(toks, i, cues);
    std::size_t words = end - i;
    bool post_cued = end < toks.size() && cues.post_cues.count(toks[end].surface) > 0;
    if (words >= 2 && (pre_cued || post_cued)) {
      spans.push_back({i, end});
      i = end;
      continue;
    }

    // (b) cue-free database lookup: longest sub-run matching a known record;
    // multi-word, or single-word only on an exact variant match
    bool matched = false;
    for (std::size_t n = words; n >= 1; --n) {
      std::string phrase = toks[i].surface;
      for (std::size_t k = 1; k < n; ++k) phrase += " " + toks[i + k].surface;
      const NameRecord* r = db.find_exact(phrase);
      if (r != nullptr && (n >= 2 || r->find_variant(phrase) != nullptr)) {
        spans.push_back({i, i + n});
        i += n;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }

  std::vector<Annotation> out;
  for (const auto& s : spans) {
    const std::size_t off = toks[s.begin].offset;
    const std::size_t len = toks[s.end - 1].offset + toks[s.end - 1].length - off;
    std::string phrase = toks[s.begin].surface;
    for (std::size_t k = s.begin + 1; k < s.end; ++k) phrase += " " + toks[k].surface;
    std::int64_t alias_id = db.merge_variant(phrase, doc.language);
    Annotation a;
    a.kind = AnnotationKind::name;
    a.offset = off;
    a.length = len;
    a.surface = doc.text.substr(off, len);
    a.normalized = db.record(alias_id)->prototype;
    a.aux.emplace_back("alias_id", std::to_string(alias_id));
    out.push_back(std::move(a));
  }
  return out;
}

SparseVector name_vector(const std::vector<Annotation>& annotations,
                         const NameCorpusStats* corpus_stats) {
  SparseVector v("name");
  std::map<std::string, double> counts;
  for (const auto& a : annotations) {
    if (a.kind != AnnotationKind::name) throw UsageError("name_vector: non-name annotation");
    counts[a.aux_value("alias_id")] += 1.0;
  }
  if (corpus_stats == nullptr || corpus_stats->total_docs == 0) {
    if (!counts.empty())
      std::cerr << "warning: name_vector without corpus statistics, using raw counts\n";
    for (const auto& [dim, tf] : counts) v.add(dim, tf);
    return v;
  }
  for (const auto& [dim, tf] : counts) {
    std::int64_t id = std::stoll(dim);
    auto it = corpus_stats->docs_with_alias.find(id);
    std::size_t df = it == corpus_stats->docs_with_alias.end() ? 1 : it->second;
    v.add(dim, tfidf(tf, df, corpus_stats->total_docs));
  }
  return v;
}

}  // namespace mixt
