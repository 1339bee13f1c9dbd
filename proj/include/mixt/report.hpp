// Result renderings: highlighted HTML with a document-profile block, and
// GeoJSON maps of the places mentioned in a document or cluster.

#ifndef MIXT_REPORT_HPP
#define MIXT_REPORT_HPP

#include <string>
#include <vector>

#include "mixt/core.hpp"
#include "mixt/gazetteer.hpp"
#include "mixt/nomenclature.hpp"

namespace mixt {

struct DisplayResources {
  const Gazetteer* gazetteer = nullptr;
  const ProductDictionary* products = nullptr;
  std::map<std::int64_t, std::string> descriptor_labels;  // for display_language
};

// Self-contained HTML: entity spans wrapped in kind-specific classes with
// hover text in the display language; the visible text is unchanged.
std::string report_html(const std::string& doc_id, const std::string& text,
                        const std::vector<Annotation>& annotations,
                        const std::string& display_language,
                        const DisplayResources& resources = {});

// One point feature per distinct place with a mention-count property.
std::string report_geojson(const std::vector<Annotation>& place_annotations);

// Test helper mirroring how a browser recovers the text: strips tags inside
// the document text block and decodes the entities report_html produces.
std::string strip_document_text(const std::string& html);

std::string html_escape(const std::string& raw);

}  // namespace mixt

#endif
