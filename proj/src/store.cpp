#include "mixt/store.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mixt {

namespace {

constexpr std::string_view kLogHeader = "MIXTSTORE 1";

bool is_dd_string(const std::string& s) {
  if (s.size() != 10 || s[0] != 'D' || s[1] != 'D') return false;
  for (std::size_t i = 2; i < 10; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  int month = (s[6] - '0') * 10 + (s[7] - '0');
  int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month <= 12 && day <= 31;
}

void check_clean(const std::string& v, const char* what) {
  if (v.find_first_of("\t\n|") != std::string::npos)
    throw UsageError(std::string("record field contains a separator: ") + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) { out.push_back(cur); cur.clear(); }
    else cur.push_back(c);
  }
  out.push_back(cur);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void DocumentRecord::validate() const {
  if (id.empty()) throw UsageError("record: empty document id");
  check_clean(id, "id");
  check_clean(language, "language");
  check_clean(source, "source");
  for (const auto& d : dates)
    if (!is_dd_string(d)) throw UsageError("record: malformed normalized date: " + d);
  for (const auto& k : keywords) check_clean(k.term, "keyword term");
  for (const auto& p : places) check_clean(p.country, "country");
  for (const auto& p : products) {
    check_clean(p.code, "product code");
    check_clean(p.supergroup, "supergroup");
  }
}

std::string serialize_record(const DocumentRecord& r) {
  r.validate();
  std::ostringstream os;
  os << "id=" << r.id << "\tlanguage=" << r.language << "\tsource=" << r.source
     << "\treference_date=" << r.reference_date;
  os << "\tplaces=";
  for (std::size_t i = 0; i < r.places.size(); ++i) {
    const auto& p = r.places[i];
    if (i) os << '|';
    os << p.place_id << ':' << p.country << ':' << fmt(p.lat) << ':' << fmt(p.lon)
       << ':' << p.count;
  }
  os << "\tproducts=";
  for (std::size_t i = 0; i < r.products.size(); ++i) {
    const auto& p = r.products[i];
    if (i) os << '|';
    os << p.code << ':' << p.supergroup << ':' << p.count;
  }
  os << "\tdates=";
  for (std::size_t i = 0; i < r.dates.size(); ++i) {
    if (i) os << '|';
    os << r.dates[i];
  }
  os << "\tnames=";
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    if (i) os << '|';
    os << r.names[i].alias_id << ':' << r.names[i].count;
  }
  os << "\tdescriptors=";
  for (std::size_t i = 0; i < r.descriptors.size(); ++i) {
    if (i) os << '|';
    os << r.descriptors[i].id << ':' << fmt(r.descriptors[i].score);
  }
  os << "\tkeywords=";
  for (std::size_t i = 0; i < r.keywords.size(); ++i) {
    if (i) os << '|';
    os << r.keywords[i].term << ':' << fmt(r.keywords[i].keyness);
  }
  return os.str();
}

DocumentRecord parse_record(const std::string& line) {
  DocumentRecord r;
  for (const auto& field : split(line, '\t')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ResourceError("record line: field without '='");
    std::string key = field.substr(0, eq);
    std::string value = field.substr(eq + 1);
    auto items = [&]() {
      std::vector<std::string> out;
      if (!value.empty()) out = split(value, '|');
      return out;
    };
    if (key == "id") r.id = value;
    else if (key == "language") r.language = value;
    else if (key == "source") r.source = value;
    else if (key == "reference_date") r.reference_date = value;
    else if (key == "places") {
      for (const auto& item : items()) {
        auto f = split(item, ':');
        if (f.size() != 5) throw ResourceError("record line: malformed place item");
        r.places.push_back({std::stoll(f[0]), f[1], std::stod(f[2]), std::stod(f[3]),
                            static_cast<std::size_t>(std::stoull(f[4]))});
      }
    } else if (key == "products") {
      for (const auto& item : items()) {
        auto f = split(item, ':');
        if (f.size() != 3) throw ResourceError("record line: malformed product item");
        r.products.push_back({f[0], f[1], static_cast<std::size_t>(std::stoull(f[2]))});
      }
    } else if (key == "dates") {
      for (const auto& item : items()) r.dates.push_back(item);
    } else if (key == "names") {
      for (const auto& item : items()) {
        auto f = split(item, ':');
        if (f.size() != 2) throw ResourceError("record line: malformed name item");
        r.names.push_back({std::stoll(f[0]), static_cast<std::size_t>(std::stoull(f[1]))});
      }
    } else if (key == "descriptors") {
      for (const auto& item : items()) {
        auto f = split(item, ':');
        if (f.size() != 2) throw ResourceError("record line: malformed descriptor item");
        r.descriptors.push_back({std::stoll(f[0]), std::stod(f[1])});
      }
    } else if (key == "keywords") {
      for (const auto& item : items()) {
        auto f = split(item, ':');
        if (f.size() != 2) throw ResourceError("record line: malformed keyword item");
        r.keywords.push_back({f[0], std::stod(f[1])});
      }
    } else {
      throw ResourceError("record line: unknown field: " + key);
    }
  }
  r.validate();
  return r;
}

Store::Store(std::string directory) : directory_(std::move(directory)) {
  namespace fs = std::filesystem;
  fs::create_directories(directory_);
  log_path_ = (fs::path(directory_) / "records.log").string();
  std::ifstream in(log_path_);
  if (!in) {
    std::ofstream out(log_path_);
    out << kLogHeader << "\n";
    return;
  }
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader)
    throw ResourceError(log_path_ + ": missing or unsupported store header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DocumentRecord r = parse_record(line);
    records_[r.id] = std::move(r);  // replay: latest record wins
  }
}

std::string Store::ingest(const DocumentRecord& record) {
  record.validate();
  std::ofstream out(log_path_, std::ios::app);
  if (!out) throw ResourceError("cannot append to store log: " + log_path_);
  out << serialize_record(record) << "\n";
  records_[record.id] = record;
  return record.id;
}

std::optional<DocumentRecord> Store::fetch(const std::string& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Store::query(const Query& q) const {
  if (q.date_from && q.date_to) {
    if (q.date_from->size() != 8 || q.date_to->size() != 8 || *q.date_from > *q.date_to)
      throw UsageError("query: malformed date range");
  } else if (q.date_from.has_value() != q.date_to.has_value()) {
    if ((q.date_from && q.date_from->size() != 8) || (q.date_to && q.date_to->size() != 8))
      throw UsageError("query: malformed date bound");
  }
  std::vector<std::string> out;
  for (const auto& [id, r] : records_) {
    if (q.language && r.language != *q.language) continue;
    if (q.country) {
      bool hit = std::any_of(r.places.begin(), r.places.end(),
                             [&](const PlaceMention& p) { return p.country == *q.country; });
      if (!hit) continue;
    }
    if (q.product_code_prefix) {
      bool hit = std::any_of(r.products.begin(), r.products.end(), [&](const ProductMention& p) {
        return p.code.rfind(*q.product_code_prefix, 0) == 0;
      });
      if (!hit) continue;
    }
    if (q.supergroup) {
      bool hit = std::any_of(r.products.begin(), r.products.end(), [&](const ProductMention& p) {
        return p.supergroup == *q.supergroup;
      });
      if (!hit) continue;
    }
    if (q.alias_id) {
      bool hit = std::any_of(r.names.begin(), r.names.end(),
                             [&](const NameMention& n) { return n.alias_id == *q.alias_id; });
      if (!hit) continue;
    }
    if (q.descriptor_id) {
      bool hit = std::any_of(r.descriptors.begin(), r.descriptors.end(),
                             [&](const DescriptorScore& d) { return d.id == *q.descriptor_id; });
      if (!hit) continue;
    }
    if (q.date_from || q.date_to) {
      // only complete dates participate in range predicates
      bool hit = false;
      for (const auto& d : r.dates) {
        std::string suffix = d.substr(2);
        if (suffix.substr(0, 4) == "0000" || suffix.substr(4, 2) == "00" ||
            suffix.substr(6, 2) == "00")
          continue;
        if (q.date_from && suffix < *q.date_from) continue;
        if (q.date_to && suffix > *q.date_to) continue;
        hit = true;
        break;
      }
      if (!hit) continue;
    }
    out.push_back(id);
  }
  return out;  // map iteration: already sorted by id
}

std::string export_standoff(const std::string& doc_id,
                            const std::vector<Annotation>& annotations) {
  std::ostringstream os;
  os << "doc_id\tkind\toffset\tlength\tsurface\tnormalized\taux\n";
  for (const auto& a : annotations) {
    std::string aux;
    for (const auto& [k, v] : a.aux) aux += k + "=" + v + ";";
    os << doc_id << '\t' << to_string(a.kind) << '\t' << a.offset << '\t' << a.length
       << '\t' << a.surface << '\t' << a.normalized << '\t' << aux << '\n';
  }
  return os.str();
}

std::vector<Annotation> parse_standoff(const std::string& table, std::string* doc_id) {
  std::vector<Annotation> out;
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 7) throw ResourceError("stand-off line: expected 7 fields");
    if (doc_id != nullptr) *doc_id = fields[0];
    Annotation a;
    auto kind = annotation_kind_from(fields[1]);
    if (!kind) throw ResourceError("stand-off line: unknown kind: " + fields[1]);
    a.kind = *kind;
    a.offset = std::stoull(fields[2]);
    a.length = std::stoull(fields[3]);
    a.surface = fields[4];
    a.normalized = fields[5];
    for (const auto& pair : split(fields[6], ';')) {
      if (pair.empty()) continue;
      auto eq = pair.find('=');
      if (eq == std::string::npos) throw ResourceError("stand-off line: malformed aux");
      a.aux.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mixt
