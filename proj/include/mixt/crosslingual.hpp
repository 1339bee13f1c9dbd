// Monolingual clustering, cluster titling, shared-token extraction and the
// weighted multi-facet cross-lingual similarity used for cluster linking
// and translation-pair detection.

#ifndef MIXT_CROSSLINGUAL_HPP
#define MIXT_CROSSLINGUAL_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct Cluster {
  std::int64_t cluster_id = 0;
  std::vector<std::string> members;   // document ids
  SparseVector centroid;              // keyword space, normalized member sum
  FacetedRepresentation representation;  // facet-wise centroid
  std::string title_doc;              // member closest to the centroid
};

struct WeightConfig {
  double w_descriptor = 0.4;
  double w_geo_name = 0.3;
  double w_token = 0.3;
  double link_threshold = 0.5;
  double cluster_threshold = 0.5;
  double length_alpha = 0.0;

  void validate() const;  // weights non-negative, summing to 1
};

// "key = value" lines for the five parameters.
WeightConfig load_weight_config(const std::string& path);

// Average-linkage agglomerative clustering under cosine; merging stops when
// the best pairwise cluster similarity drops below the threshold. Ties
// merge the lowest index pair. Input order does not affect the partition.
std::vector<Cluster> cluster(const std::vector<std::pair<std::string, SparseVector>>& docs,
                             double threshold);

struct SharedTokenConfig {
  char grouping_separator = ',';   // stripped from numbers
  char decimal_separator = '.';    // mapped to '.'
  std::set<std::string> stopwords; // filters cognate candidates
  std::size_t min_cognate_length = 5;
};

// Numbers normalized to a common format, uppercase-initial tokens (name
// candidates) and long lowercase tokens (cognate candidates), case-folded;
// weight = term frequency. Space "token".
SparseVector shared_token_vector(const Document& doc, const SharedTokenConfig& config);

// w_descriptor * cos(descriptor) + w_geo_name * cos(country+name, disjoint
// namespaces) + w_token * cos(token). Missing facets contribute 0.
double cross_lingual_similarity(const FacetedRepresentation& a,
                                const FacetedRepresentation& b,
                                const WeightConfig& w);

struct ClusterLink {
  std::int64_t source = 0;
  std::string source_language;
  std::int64_t target = 0;
  std::string target_language;
  double score = 0.0;
};

// For each cluster and each other language, a directional link to the best
// scoring cluster when the score reaches link_threshold.
std::vector<ClusterLink> link_clusters(
    const std::map<std::string, std::vector<Cluster>>& clusters_by_language,
    const WeightConfig& w);

// cos(descriptor facets) * (min(len)/max(len))^length_alpha,
// lengths in characters; length_alpha = 0 disables the length feature.
double detect_translation(const FacetedRepresentation& a, std::size_t len_a,
                          const FacetedRepresentation& b, std::size_t len_b,
                          const WeightConfig& w);

// Facet-wise centroid of member representations (weights averaged).
FacetedRepresentation facet_centroid(const std::vector<const FacetedRepresentation*>& members);

}  // namespace mixt

#endif
