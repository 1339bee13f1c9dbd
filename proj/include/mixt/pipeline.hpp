// Wires resources and the annotation pipeline: language guessing first,
// then names before places (so person/place homographs go to the name
// recognizer), then products, dates, keywords and descriptors.

#ifndef MIXT_PIPELINE_HPP
#define MIXT_PIPELINE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mixt/core.hpp"
#include "mixt/dates.hpp"
#include "mixt/descriptors.hpp"
#include "mixt/gazetteer.hpp"
#include "mixt/keywords.hpp"
#include "mixt/langid.hpp"
#include "mixt/names.hpp"
#include "mixt/nomenclature.hpp"
#include "mixt/store.hpp"

namespace mixt {

struct LanguageResources {
  std::optional<std::string> gazetteer;
  std::optional<std::string> geostop;
  std::optional<std::string> suffix_rules;
  std::optional<std::string> product_dict;
  std::optional<std::string> product_stop;
  std::optional<std::string> date_params;
  std::optional<std::string> cues;
  std::optional<std::string> reference_freq;
  std::optional<std::string> stopwords;
  std::optional<std::string> descriptor_profiles;
  std::optional<std::string> language_profile;

  bool any() const;
};

struct PipelineConfig {
  std::map<std::string, LanguageResources> per_language;
  std::string display_language = "en";
  std::optional<std::string> name_db_path;

  // Sections "[<lang>]" with "key = path" lines; "[global]" for
  // display_language and name_db.
  static PipelineConfig load(const std::string& path);
};

struct AnnotatedDocument {
  Document doc;
  std::vector<Annotation> annotations;
  DocumentRecord record;
  FacetedRepresentation representation;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  // Returns nullopt (with a diagnostic on stderr) when no resources exist
  // for the document's language.
  std::optional<AnnotatedDocument> annotate(Document doc);

  const NameDatabase& name_db() const { return name_db_; }
  NameDatabase& name_db() { return name_db_; }
  const PipelineConfig& config() const { return config_; }

 private:
  struct Loaded {
    std::optional<Gazetteer> gazetteer;
    GeoStopList geostop;
    SuffixRuleSet suffix_rules;
    std::optional<ProductDictionary> products;
    ProductStopList product_stop;
    std::optional<DateParameterFile> date_params;
    std::optional<CueLexicon> cues;
    std::optional<ReferenceFrequencyList> reference_freq;
    std::set<std::string> stopwords;
    std::vector<DescriptorProfile> profiles;
  };
  const Loaded* resources_for(const std::string& language);

  PipelineConfig config_;
  std::vector<LanguageProfile> profiles_;
  NameDatabase name_db_;
  std::map<std::string, Loaded> cache_;
};

}  // namespace mixt

#endif
