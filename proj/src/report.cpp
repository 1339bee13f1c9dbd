#include "mixt/report.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mixt {

std::string html_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string hover_text(const Annotation& a, const std::string& display_language,
                       const DisplayResources& res) {
  switch (a.kind) {
    case AnnotationKind::place: {
      if (res.gazetteer != nullptr) {
        std::string id = a.aux_value("place_id");
        if (!id.empty()) {
          std::string name = res.gazetteer->display_name(std::stoll(id), display_language);
          if (!name.empty()) return name;
        }
      }
      return a.normalized;
    }
    case AnnotationKind::product: {
      if (res.products != nullptr) {
        std::string term = res.products->display_term(a.aux_value("code"), display_language);
        if (!term.empty()) return term + " [" + a.aux_value("supergroup") + "]";
      }
      return a.normalized;
    }
    case AnnotationKind::descriptor: {
      auto it = res.descriptor_labels.find(std::stoll(a.normalized));
      if (it != res.descriptor_labels.end()) return it->second;
      return a.normalized;
    }
    default:
      return a.normalized;
  }
}

}  // namespace

std::string report_html(const std::string& doc_id, const std::string& text,
                        const std::vector<Annotation>& annotations,
                        const std::string& display_language,
                        const DisplayResources& resources) {
  std::vector<const Annotation*> spans;
  for (const auto& a : annotations)
    if (a.length > 0) spans.push_back(&a);
  std::sort(spans.begin(), spans.end(),
            [](const Annotation* a, const Annotation* b) { return a->offset < b->offset; });

  std::ostringstream os;
  os << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
     << "<title>" << html_escape(doc_id) << "</title>\n<style>\n"
     << ".place { background: #cde4f5; }\n"
     << ".product { background: #d5efcf; }\n"
     << ".date { background: #f5e6c0; }\n"
     << ".name { background: #f0cfdd; }\n"
     << ".keyword { background: #e8e8e8; }\n"
     << "#text { white-space: pre-wrap; font-family: serif; }\n"
     << "table { border-collapse: collapse; } td, th { border: 1px solid #999; "
        "padding: 2px 8px; }\n"
     << "</style>\n</head>\n<body>\n<div id=\"text\">";

  std::size_t pos = 0;
  for (const Annotation* a : spans) {
    if (a->offset < pos) continue;  // overlapping spans are skipped
    os << html_escape(text.substr(pos, a->offset - pos));
    os << "<span class=\"" << to_string(a->kind) << "\" title=\""
       << html_escape(hover_text(*a, display_language, resources)) << "\">"
       << html_escape(text.substr(a->offset, a->length)) << "</span>";
    pos = a->offset + a->length;
  }
  os << html_escape(text.substr(pos)) << "</div>\n";

  // document profile: one table row per annotation kind
  os << "<h2>Document profile</h2>\n<table>\n<tr><th>facet</th><th>values</th></tr>\n";
  std::map<std::string, std::vector<std::string>> by_kind;
  for (const auto& a : annotations) {
    std::string entry = a.surface.empty() ? a.normalized : a.surface;
    std::string hover = hover_text(a, display_language, resources);
    if (hover != entry) entry += " (" + hover + ")";
    by_kind[std::string(to_string(a.kind))].push_back(entry);
  }
  for (const auto& [kind, values] : by_kind) {
    os << "<tr><td>" << html_escape(kind) << "</td><td>";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os << ", ";
      os << html_escape(values[i]);
    }
    os << "</td></tr>\n";
  }
  os << "</table>\n</body>\n</html>\n";
  return os.str();
}

std::string report_geojson(const std::vector<Annotation>& place_annotations) {
  using nlohmann::json;
  struct PlacePoint {
    std::string name;
    double lat = 0.0, lon = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, PlacePoint> by_place;
  for (const auto& a : place_annotations) {
    if (a.kind != AnnotationKind::place) continue;
    std::string id = a.aux_value("place_id");
    auto& p = by_place[id];
    if (p.count == 0) {
      p.name = a.normalized;
      p.lat = std::stod(a.aux_value("lat"));
      p.lon = std::stod(a.aux_value("lon"));
    }
    ++p.count;
  }
  json features = json::array();
  for (const auto& [id, p] : by_place) {
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
        {"properties",
         {{"place_id", std::stoll(id)}, {"name", p.name}, {"mentions", p.count}}},
    });
  }
  json out = {{"type", "FeatureCollection"}, {"features", features}};
  return out.dump(2) + "\n";
}

std::string strip_document_text(const std::string& html) {
  auto begin = html.find("<div id=\"text\">");
  if (begin == std::string::npos) return {};
  begin += std::string("<div id=\"text\">").size();
  auto end = html.find("</div>", begin);
  std::string body = html.substr(begin, end - begin);

  std::string stripped;
  bool in_tag = false;
  for (char c : body) {
    if (c == '<') in_tag = true;
    else if (c == '>') in_tag = false;
    else if (!in_tag) stripped.push_back(c);
  }
  std::string out;
  for (std::size_t i = 0; i < stripped.size();) {
    if (stripped.compare(i, 5, "&amp;") == 0) { out += '&'; i += 5; }
    else if (stripped.compare(i, 4, "&lt;") == 0) { out += '<'; i += 4; }
    else if (stripped.compare(i, 4, "&gt;") == 0) { out += '>'; i += 4; }
    else if (stripped.compare(i, 6, "&quot;") == 0) { out += '"'; i += 6; }
    else { out += stripped[i]; ++i; }
  }
  return out;
}

}  // namespace mixt
