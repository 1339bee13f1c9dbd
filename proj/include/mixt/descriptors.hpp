// Profile-based category-ranking descriptor assignment trained from
// positively labeled documents.

#ifndef MIXT_DESCRIPTORS_HPP
#define MIXT_DESCRIPTORS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mixt/core.hpp"
#include "mixt/keywords.hpp"

namespace mixt {

struct DescriptorProfile {
  std::int64_t descriptor_id = 0;
  std::map<std::string, std::string> labels;  // language -> label
  std::map<std::string, double> profile;      // term -> positive weight
};

struct TrainingDocument {
  Document doc;
  std::set<std::int64_t> descriptor_ids;
};

// One profile per descriptor: the descriptor's positive documents are
// concatenated into a pseudo-document and every non-stop term is scored by
// log-likelihood keyness against the full training corpus. Only terms
// overrepresented in the pseudo-document are kept, at most max_terms each.
std::vector<DescriptorProfile> train_profiles(
    const std::vector<TrainingDocument>& training_set,
    const std::set<std::string>& stopwords, std::size_t max_terms = 5000);

struct Assignment {
  // (descriptor_id, similarity percentage), non-increasing similarity
  std::vector<std::pair<std::int64_t, double>> ranked;
};

// Cosine of the stop-filtered term-frequency vector against each profile,
// expressed as a percentage; top k, ties by descriptor_id.
Assignment assign(const Document& doc, const std::vector<DescriptorProfile>& profiles,
                  std::size_t k, const std::set<std::string>& stopwords);

SparseVector descriptor_vector(const Assignment& assignment);

// Profile file: "descriptor_id \t term \t weight" lines; label lines
// "LABEL \t descriptor_id \t language \t label".
void save_profiles(const std::vector<DescriptorProfile>& profiles, std::ostream& out);
std::vector<DescriptorProfile> load_profiles(std::istream& in);

}  // namespace mixt

#endif
