#include "mixt/crosslingual.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mixt/utf8.hpp"

namespace mixt {

void WeightConfig::validate() const {
  if (w_descriptor < 0 || w_geo_name < 0 || w_token < 0)
    throw UsageError("weight config: negative facet weight");
  double sum = w_descriptor + w_geo_name + w_token;
  if (std::abs(sum - 1.0) > 1e-9)
    throw UsageError("weight config: facet weights must sum to 1");
  if (link_threshold < 0 || link_threshold > 1 || cluster_threshold < 0 ||
      cluster_threshold > 1 || length_alpha < 0)
    throw UsageError("weight config: threshold out of range");
}

WeightConfig load_weight_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open weight config: " + path);
  WeightConfig w;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ResourceError(path + ": expected 'key = value': " + line);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    double value = std::stod(trim(line.substr(eq + 1)));
    if (key == "w_descriptor") w.w_descriptor = value;
    else if (key == "w_geo_name") w.w_geo_name = value;
    else if (key == "w_token") w.w_token = value;
    else if (key == "link_threshold") w.link_threshold = value;
    else if (key == "cluster_threshold") w.cluster_threshold = value;
    else if (key == "length_alpha") w.length_alpha = value;
    else throw ResourceError(path + ": unknown key: " + key);
  }
  w.validate();
  return w;
}

std::vector<Cluster> cluster(const std::vector<std::pair<std::string, SparseVector>>& docs,
                             double threshold) {
  const std::size_t n = docs.size();
  std::vector<Cluster> out;
  if (n == 0) return out;

  // pairwise document similarities
  std::vector<std::vector<double>> doc_sim(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      doc_sim[i][j] = doc_sim[j][i] = cosine(docs[i].second, docs[j].second);

  // active clusters as sorted member index lists; average linkage via the
  // Lance-Williams update on cluster sizes
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = {i};
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sim[i][j] = doc_sim[i][j];
  std::vector<bool> alive(n, true);

  while (true) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        if (sim[i][j] > best) { best = sim[i][j]; bi = i; bj = j; }
      }
    }
    if (best < threshold || best < 0.0) break;
    const double ni = static_cast<double>(groups[bi].size());
    const double nj = static_cast<double>(groups[bj].size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      sim[bi][k] = sim[k][bi] = (ni * sim[bi][k] + nj * sim[bj][k]) / (ni + nj);
    }
    groups[bi].insert(groups[bi].end(), groups[bj].begin(), groups[bj].end());
    std::sort(groups[bi].begin(), groups[bi].end());
    alive[bj] = false;
  }

  std::int64_t next_id = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    Cluster c;
    c.cluster_id = next_id++;
    SparseVector sum(docs[groups[i].front()].second.space());
    for (std::size_t m : groups[i]) {
      c.members.push_back(docs[m].first);
      sum += docs[m].second;
    }
    const double norm = sum.norm();
    c.centroid = norm > 0 ? sum.scaled(1.0 / norm) : sum;
    // title: member closest to the centroid, ties by lowest document id
    double best = -1.0;
    for (std::size_t m : groups[i]) {
      double s = cosine(docs[m].second, c.centroid);
      if (s > best || (s == best && docs[m].first < c.title_doc)) {
        best = s;
        c.title_doc = docs[m].first;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

SparseVector shared_token_vector(const Document& doc, const SharedTokenConfig& config) {
  SparseVector v("token");
  for (const auto& t : tokenize(doc.text, doc.language)) {
    if (t.is_numeric) {
      std::string norm;
      for (char c : t.surface) {
        if (c == config.grouping_separator) continue;
        norm.push_back(c == config.decimal_separator ? '.' : c);
      }
      v.add(norm, 1.0);
      continue;
    }
    std::string folded = utf8::fold(t.surface);
    if (t.is_uppercase_initial) {
      v.add(folded, 1.0);  // name candidate
    } else if (utf8::points(folded).size() >= config.min_cognate_length &&
               config.stopwords.count(folded) == 0) {
      v.add(folded, 1.0);  // cognate candidate
    }
  }
  return v;
}

namespace {

double facet_cosine(const FacetedRepresentation& a, const FacetedRepresentation& b,
                    const std::string& name) {
  const SparseVector* fa = a.facet(name);
  const SparseVector* fb = b.facet(name);
  if (fa == nullptr || fb == nullptr) return 0.0;
  return cosine(*fa, *fb);
}

// country and name facets concatenated as disjoint dimension namespaces
SparseVector geo_name_union(const FacetedRepresentation& r) {
  SparseVector v("geo+name");
  if (const SparseVector* c = r.facet("country"))
    for (const auto& [d, w] : c->entries()) v.add("c:" + d, w);
  if (const SparseVector* nm = r.facet("name"))
    for (const auto& [d, w] : nm->entries()) v.add("n:" + d, w);
  return v;
}

}  // namespace

double cross_lingual_similarity(const FacetedRepresentation& a,
                                const FacetedRepresentation& b,
                                const WeightConfig& w) {
  w.validate();
  double score = w.w_descriptor * facet_cosine(a, b, "descriptor");
  score += w.w_geo_name * cosine(geo_name_union(a), geo_name_union(b));
  score += w.w_token * facet_cosine(a, b, "token");
  return score;
}

std::vector<ClusterLink> link_clusters(
    const std::map<std::string, std::vector<Cluster>>& clusters_by_language,
    const WeightConfig& w) {
  w.validate();
  std::vector<ClusterLink> out;
  for (const auto& [src_lang, src_clusters] : clusters_by_language) {
    for (const auto& src : src_clusters) {
      for (const auto& [dst_lang, dst_clusters] : clusters_by_language) {
        if (dst_lang == src_lang) continue;
        double best = -1.0;
        const Cluster* target = nullptr;
        for (const auto& dst : dst_clusters) {
          double s = cross_lingual_similarity(src.representation, dst.representation, w);
          if (s > best || (s == best && target != nullptr &&
                           dst.cluster_id < target->cluster_id)) {
            best = s;
            target = &dst;
          }
        }
        if (target != nullptr && best >= w.link_threshold)
          out.push_back({src.cluster_id, src_lang, target->cluster_id, dst_lang, best});
      }
    }
  }
  return out;
}

double detect_translation(const FacetedRepresentation& a, std::size_t len_a,
                          const FacetedRepresentation& b, std::size_t len_b,
                          const WeightConfig& w) {
  double score = facet_cosine(a, b, "descriptor");
  if (w.length_alpha > 0.0) {
    const double lo = static_cast<double>(std::min(len_a, len_b));
    const double hi = static_cast<double>(std::max(len_a, len_b));
    const double ratio = hi > 0 ? lo / hi : 1.0;
    score *= std::pow(ratio, w.length_alpha);
  }
  return score;
}

FacetedRepresentation facet_centroid(
    const std::vector<const FacetedRepresentation*>& members) {
  FacetedRepresentation out;
  if (members.empty()) return out;
  std::set<std::string> names;
  for (const auto* m : members)
    for (const auto& [name, _] : m->facets) names.insert(name);
  for (const auto& name : names) {
    SparseVector sum(name);
    for (const auto* m : members)
      if (const SparseVector* f = m->facet(name)) sum += *f;
    out.set_facet(name, sum.scaled(1.0 / static_cast<double>(members.size())));
  }
  return out;
}

}  // namespace mixt
