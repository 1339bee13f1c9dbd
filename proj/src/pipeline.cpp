#include "mixt/pipeline.hpp"

#include "mixt/crosslingual.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace mixt {

bool LanguageResources::any() const {
  return gazetteer || geostop || suffix_rules || product_dict || product_stop ||
         date_params || cues || reference_freq || stopwords || descriptor_profiles;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open pipeline config: " + path);
  PipelineConfig cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ResourceError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == "global") {
      if (key == "display_language") cfg.display_language = value;
      else if (key == "name_db") cfg.name_db_path = value;
      else throw ResourceError(path + ": unknown global key: " + key);
      continue;
    }
    if (section.empty())
      throw ResourceError(path + ":" + std::to_string(lineno) + ": entry outside a section");
    LanguageResources& r = cfg.per_language[section];
    if (key == "gazetteer") r.gazetteer = value;
    else if (key == "geostop") r.geostop = value;
    else if (key == "suffix_rules") r.suffix_rules = value;
    else if (key == "product_dict") r.product_dict = value;
    else if (key == "product_stop") r.product_stop = value;
    else if (key == "date_params") r.date_params = value;
    else if (key == "cues") r.cues = value;
    else if (key == "reference_freq") r.reference_freq = value;
    else if (key == "stopwords") r.stopwords = value;
    else if (key == "descriptor_profiles") r.descriptor_profiles = value;
    else if (key == "language_profile") r.language_profile = value;
    else throw ResourceError(path + ": unknown resource key: " + key);
  }
  return cfg;
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  for (const auto& [lang, res] : config_.per_language) {
    if (!res.language_profile) continue;
    std::ifstream in(*res.language_profile);
    if (!in) throw ResourceError("cannot open language profile: " + *res.language_profile);
    profiles_.push_back(load_profile(in));
  }
  if (config_.name_db_path) {
    std::ifstream in(*config_.name_db_path);
    if (in) name_db_ = NameDatabase::load(in);
  }
}

const Pipeline::Loaded* Pipeline::resources_for(const std::string& language) {
  auto cached = cache_.find(language);
  if (cached != cache_.end()) return &cached->second;
  auto cfg = config_.per_language.find(language);
  if (cfg == config_.per_language.end() || !cfg->second.any()) return nullptr;
  const LanguageResources& r = cfg->second;
  Loaded loaded;
  if (r.gazetteer) loaded.gazetteer = load_gazetteer(*r.gazetteer);
  if (r.geostop) loaded.geostop = load_geostop_list(*r.geostop, language);
  if (r.suffix_rules) loaded.suffix_rules = load_suffix_rules(*r.suffix_rules, language);
  if (r.product_dict) loaded.products = load_product_dictionary(*r.product_dict);
  if (r.product_stop) loaded.product_stop = load_product_stoplist(*r.product_stop, language);
  if (r.date_params) loaded.date_params = load_date_parameters(*r.date_params);
  if (r.cues) loaded.cues = load_cue_lexicon(*r.cues, language);
  if (r.reference_freq) loaded.reference_freq = load_reference_list(*r.reference_freq, language);
  if (r.stopwords) loaded.stopwords = load_stopwords(*r.stopwords);
  if (r.descriptor_profiles) {
    std::ifstream in(*r.descriptor_profiles);
    if (!in) throw ResourceError("cannot open descriptor profiles: " + *r.descriptor_profiles);
    loaded.profiles = load_profiles(in);
  }
  auto [it, _] = cache_.emplace(language, std::move(loaded));
  return &it->second;
}

std::optional<AnnotatedDocument> Pipeline::annotate(Document doc) {
  if (doc.language == "und" && !profiles_.empty()) {
    auto guessed = identify(doc.text, profiles_);
    doc.language = guessed.language;
  }
  const Loaded* res = resources_for(doc.language);
  if (res == nullptr && !doc.text.empty()) {
    std::cerr << "skipping " << doc.id << ": no resources for language '" << doc.language
              << "'\n";
    return std::nullopt;
  }

  AnnotatedDocument out;
  out.record.id = doc.id;
  out.record.language = doc.language;
  out.record.source = doc.source;
  if (doc.reference_date) {
    std::ostringstream ref;
    ref << doc.reference_date->year << '-' << (doc.reference_date->month < 10 ? "0" : "")
        << doc.reference_date->month << '-' << (doc.reference_date->day < 10 ? "0" : "")
        << doc.reference_date->day;
    out.record.reference_date = ref.str();
  }
  if (doc.text.empty() || res == nullptr) {
    out.doc = std::move(doc);
    return out;
  }

  std::vector<Annotation>& all = out.annotations;

  // names before places: the person-name recognizer claims homograph spans
  std::vector<ByteSpan> claimed;
  if (res->cues) {
    auto names = recognize_names(doc, *res->cues, name_db_);
    std::map<std::int64_t, std::size_t> alias_counts;
    for (const auto& a : names) {
      claimed.push_back({a.offset, a.length});
      ++alias_counts[std::stoll(a.aux_value("alias_id"))];
      all.push_back(a);
    }
    for (const auto& [id, n] : alias_counts) out.record.names.push_back({id, n});
  }

  if (res->gazetteer) {
    auto places = recognize_places(doc, *res->gazetteer, res->geostop, res->suffix_rules,
                                   claimed);
    std::map<std::int64_t, PlaceMention> mentions;
    for (const auto& a : places) {
      std::int64_t id = std::stoll(a.aux_value("place_id"));
      auto& m = mentions[id];
      if (m.count == 0) {
        m.place_id = id;
        m.country = a.aux_value("country");
        m.lat = std::stod(a.aux_value("lat"));
        m.lon = std::stod(a.aux_value("lon"));
      }
      ++m.count;
      all.push_back(a);
    }
    for (const auto& [_, m] : mentions) out.record.places.push_back(m);
    out.representation.set_facet(
        "country", country_vector(places, GeoResolution::country, GeoWeighting::raw));
  }

  if (res->products) {
    auto products = recognize_products(doc, *res->products, res->product_stop);
    std::map<std::string, ProductMention> mentions;
    for (const auto& a : products) {
      auto& m = mentions[a.aux_value("code")];
      if (m.count == 0) {
        m.code = a.aux_value("code");
        m.supergroup = a.aux_value("supergroup");
      }
      ++m.count;
      all.push_back(a);
    }
    for (const auto& [_, m] : mentions) out.record.products.push_back(m);
    out.representation.set_facet("product", product_vector(products, ProductLevel::code));
    out.representation.set_facet("supergroup",
                                 product_vector(products, ProductLevel::supergroup));
  }

  if (res->date_params) {
    auto dates = parse_dates(doc, *res->date_params);
    SparseVector date_vec("date");
    for (const auto& a : dates) {
      out.record.dates.push_back(a.normalized);
      date_vec.add(a.normalized, 1.0);
      all.push_back(a);
    }
    out.representation.set_facet("date", date_vec);
  }

  std::vector<Keyword> keywords;
  if (res->reference_freq) {
    keywords = extract_keywords(doc, *res->reference_freq, res->stopwords);
    for (const auto& kw : keywords) out.record.keywords.push_back({kw.term, kw.keyness});
    out.representation.set_facet("keyword", keyword_vector(keywords));
  }

  if (!res->profiles.empty()) {
    auto assignment = assign(doc, res->profiles, 8, res->stopwords);
    for (const auto& [id, score] : assignment.ranked)
      out.record.descriptors.push_back({id, score});
    out.representation.set_facet("descriptor", descriptor_vector(assignment));
  }

  {
    SharedTokenConfig token_cfg;
    token_cfg.stopwords = res->stopwords;
    if (doc.language == "de") {
      token_cfg.grouping_separator = '.';
      token_cfg.decimal_separator = ',';
    }
    out.representation.set_facet("token", shared_token_vector(doc, token_cfg));
  }

  // name facet (raw counts; tfidf needs corpus statistics the caller owns)
  {
    SparseVector nv("name");
    for (const auto& m : out.record.names)
      nv.add(std::to_string(m.alias_id), static_cast<double>(m.count));
    out.representation.set_facet("name", nv);
  }

  out.doc = std::move(doc);
  return out;
}

}  // namespace mixt
