#include "mixt/descriptors.hpp"

#include <algorithm>
#include <iostream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mixt/utf8.hpp"

namespace mixt {

namespace {

// stop-filtered term frequencies plus the unfiltered token total
std::map<std::string, std::size_t> term_counts(const Document& doc,
                                               const std::set<std::string>& stopwords,
                                               std::size_t* total) {
  std::map<std::string, std::size_t> tf;
  std::size_t n = 0;
  for (const auto& t : tokenize(doc.text, doc.language)) {
    ++n;
    std::string folded = utf8::fold(t.surface);
    if (stopwords.count(folded)) continue;
    ++tf[folded];
  }
  if (total != nullptr) *total = n;
  return tf;
}

}  // namespace

std::vector<DescriptorProfile> train_profiles(
    const std::vector<TrainingDocument>& training_set,
    const std::set<std::string>& stopwords, std::size_t max_terms) {
  // full-corpus counts form the reference side of the keyness formula
  std::map<std::string, std::size_t> corpus_tf;
  std::size_t corpus_total = 0;
  std::vector<std::map<std::string, std::size_t>> doc_tf(training_set.size());
  std::vector<std::size_t> doc_total(training_set.size());
  for (std::size_t i = 0; i < training_set.size(); ++i) {
    doc_tf[i] = term_counts(training_set[i].doc, stopwords, &doc_total[i]);
    corpus_total += doc_total[i];
    for (const auto& [term, n] : doc_tf[i]) corpus_tf[term] += n;
  }

  std::map<std::int64_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < training_set.size(); ++i)
    for (std::int64_t id : training_set[i].descriptor_ids) members[id].push_back(i);

  std::vector<DescriptorProfile> out;
  for (const auto& [id, docs] : members) {
    if (docs.empty()) {
      std::cerr << "warning: descriptor " << id << " has no positive documents, skipped\n";
      continue;
    }
    std::map<std::string, std::size_t> pseudo_tf;
    std::size_t pseudo_total = 0;
    for (std::size_t i : docs) {
      pseudo_total += doc_total[i];
      for (const auto& [term, n] : doc_tf[i]) pseudo_tf[term] += n;
    }
    DescriptorProfile p;
    p.descriptor_id = id;
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [term, a] : pseudo_tf) {
      const double b = static_cast<double>(corpus_tf[term] - a);
      const double n1 = static_cast<double>(pseudo_total);
      const double n2 = static_cast<double>(corpus_total - pseudo_total);
      if (n2 <= 0) {
        // degenerate single-class corpus: fall back to raw frequency
        scored.emplace_back(term, static_cast<double>(a));
        continue;
      }
      if (static_cast<double>(a) / n1 <= b / n2) continue;
      double g = log_likelihood(static_cast<double>(a), b, n1, n2);
      if (g > 0.0) scored.emplace_back(term, g);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    if (scored.size() > max_terms) scored.resize(max_terms);
    for (const auto& [term, w] : scored) p.profile[term] = w;
    if (!p.profile.empty()) out.push_back(std::move(p));
  }
  return out;
}

Assignment assign(const Document& doc, const std::vector<DescriptorProfile>& profiles,
                  std::size_t k, const std::set<std::string>& stopwords) {
  if (k < 1) throw UsageError("assign: k must be >= 1");
  Assignment result;
  auto tf = term_counts(doc, stopwords, nullptr);
  if (tf.empty()) return result;
  SparseVector doc_vec("descriptor-terms");
  for (const auto& [term, n] : tf) doc_vec.add(term, static_cast<double>(n));

  for (const auto& p : profiles) {
    SparseVector pv("descriptor-terms");
    for (const auto& [term, w] : p.profile) pv.add(term, w);
    double sim = 100.0 * cosine(doc_vec, pv);
    result.ranked.emplace_back(p.descriptor_id, sim);
  }
  std::sort(result.ranked.begin(), result.ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (result.ranked.size() > k) result.ranked.resize(k);
  return result;
}

SparseVector descriptor_vector(const Assignment& assignment) {
  SparseVector v("descriptor");
  for (const auto& [id, sim] : assignment.ranked) v.add(std::to_string(id), sim);
  return v;
}

void save_profiles(const std::vector<DescriptorProfile>& profiles, std::ostream& out) {
  out.precision(17);
  for (const auto& p : profiles) {
    for (const auto& [lang, label] : p.labels)
      out << "LABEL\t" << p.descriptor_id << '\t' << lang << '\t' << label << '\n';
    for (const auto& [term, w] : p.profile)
      out << p.descriptor_id << '\t' << term << '\t' << w << '\n';
  }
}

std::vector<DescriptorProfile> load_profiles(std::istream& in) {
  std::map<std::int64_t, DescriptorProfile> by_id;
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
    if (f.size() == 4 && f[0] == "LABEL") {
      std::int64_t id = std::stoll(f[1]);
      by_id[id].descriptor_id = id;
      by_id[id].labels[f[2]] = f[3];
    } else if (f.size() == 3) {
      std::int64_t id = std::stoll(f[0]);
      by_id[id].descriptor_id = id;
      by_id[id].profile[f[1]] = std::stod(f[2]);
    } else {
      throw ResourceError("profile file line " + std::to_string(lineno) + ": malformed");
    }
  }
  std::vector<DescriptorProfile> out;
  for (auto& [_, p] : by_id) out.push_back(std::move(p));
  return out;
}

}  // namespace mixt
