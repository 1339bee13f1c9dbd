#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mixt/store.hpp"

using namespace mixt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& stem)
      : path(fs::temp_directory_path() / ("mixt-store-test-" + stem)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

DocumentRecord sample_record(const std::string& id) {
  DocumentRecord r;
  r.id = id;
  r.language = "en";
  r.source = "wire";
  r.reference_date = "2003-02-10";
  r.places = {{20, "TR", 39.92, 32.85, 3}, {1, "GB", 51.5, -0.12, 1}};
  r.products = {{"2401100000", "80", 2}};
  r.dates = {"DD20030210", "DD20030300"};
  r.names = {{17, 2}};
  r.descriptors = {{1556, 84.5}};
  r.keywords = {{"tobacco", 120.25}, {"export", 20.5}};
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("records serialize and parse back unchanged") {
  DocumentRecord r = sample_record("doc-1");
  DocumentRecord p = parse_record(serialize_record(r));
  CHECK(p.id == r.id);
  CHECK(p.language == r.language);
  CHECK(p.source == r.source);
  CHECK(p.reference_date == r.reference_date);
  REQUIRE(p.places.size() == 2);
  CHECK(p.places[0].place_id == 20);
  CHECK(p.places[0].country == "TR");
  CHECK(p.places[0].lat == r.places[0].lat);
  CHECK(p.places[0].count == 3);
  REQUIRE(p.products.size() == 1);
  CHECK(p.products[0].code == "2401100000");
  CHECK(p.dates == r.dates);
  REQUIRE(p.names.size() == 1);
  CHECK(p.names[0].alias_id == 17);
  REQUIRE(p.descriptors.size() == 1);
  CHECK(p.descriptors[0].score == r.descriptors[0].score);
  REQUIRE(p.keywords.size() == 2);
  CHECK(p.keywords[0].keyness == r.keywords[0].keyness);
  // serialization is deterministic
  CHECK(serialize_record(p) == serialize_record(r));
}

TEST_CASE("validation rejects broken records") {
  DocumentRecord r = sample_record("ok");
  r.id = "";
  CHECK_THROWS_AS(r.validate(), UsageError);
  r = sample_record("ok");
  r.id = "has\ttab";
  CHECK_THROWS_AS(r.validate(), UsageError);
  r = sample_record("ok");
  r.dates.push_back("20030210");
  CHECK_THROWS_AS(r.validate(), UsageError);
  r = sample_record("ok");
  r.dates.push_back("DD20031301");
  CHECK_THROWS_AS(r.validate(), UsageError);
  r = sample_record("ok");
  r.keywords.push_back({"pipe|term", 1.0});
  CHECK_THROWS_AS(r.validate(), UsageError);
  CHECK_THROWS_AS(parse_record("no-equals-here"), ResourceError);
  CHECK_THROWS_AS(parse_record("id=x\tmystery=1"), ResourceError);
}

TEST_CASE("a fresh store writes its header and replays byte-exactly") {
  TempDir tmp("replay");
  std::string log;
  {
    Store store(tmp.path.string());
    for (int i = 0; i < 20; ++i) store.ingest(sample_record("doc-" + std::to_string(i)));
    log = slurp(store.log_path());
  }
  CHECK(log.rfind("MIXTSTORE 1\n", 0) == 0);
  {
    Store reopened(tmp.path.string());
    CHECK(reopened.size() == 20);
    CHECK(slurp(reopened.log_path()) == log);
    auto r = reopened.fetch("doc-7");
    REQUIRE(r.has_value());
    CHECK(r->descriptors[0].id == 1556);
    CHECK_FALSE(reopened.fetch("doc-99").has_value());
  }
}

TEST_CASE("re-ingesting an id keeps the log append-only and the index latest-wins") {
  TempDir tmp("latest");
  Store store(tmp.path.string());
  DocumentRecord first = sample_record("dup");
  store.ingest(first);
  DocumentRecord second = sample_record("dup");
  second.language = "de";
  store.ingest(second);
  CHECK(store.size() == 1);
  CHECK(store.fetch("dup")->language == "de");

  // both versions remain in the log; replay resolves to the newest
  std::string log = slurp(store.log_path());
  CHECK(std::count(log.begin(), log.end(), '\n') == 3);
  Store reopened(tmp.path.string());
  CHECK(reopened.fetch("dup")->language == "de");
}

TEST_CASE("a corrupted header refuses to open") {
  TempDir tmp("corrupt");
  fs::create_directories(tmp.path);
  std::ofstream(tmp.path / "records.log") << "NOTASTORE\n";
  CHECK_THROWS_AS(Store(tmp.path.string()), ResourceError);
}

TEST_CASE("queries conjoin predicates and sort results by id") {
  TempDir tmp("query");
  Store store(tmp.path.string());
  store.ingest(sample_record("b"));
  store.ingest(sample_record("a"));
  DocumentRecord other = sample_record("c");
  other.places = {{14, "DE", 52.52, 13.40, 1}};
  other.products = {{"0401000000", "80", 1}};
  other.dates = {"DD20040601"};
  store.ingest(other);

  Query q;
  q.product_code_prefix = "24";
  q.country = "TR";
  q.date_from = "20030101";
  q.date_to = "20030331";
  CHECK(store.query(q) == std::vector<std::string>{"a", "b"});

  q.language = "fr";
  CHECK(store.query(q).empty());
  q.language.reset();
  q.alias_id = 17;
  CHECK(store.query(q) == std::vector<std::string>{"a", "b"});
  q.alias_id = 99;
  CHECK(store.query(q).empty());

  Query supergroup_only;
  supergroup_only.supergroup = "80";
  CHECK(store.query(supergroup_only) == std::vector<std::string>{"a", "b", "c"});
  Query descriptor_only;
  descriptor_only.descriptor_id = 1556;
  CHECK(store.query(descriptor_only) == std::vector<std::string>{"a", "b", "c"});
  Query all;
  CHECK(store.query(all) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("incomplete dates never satisfy a range predicate") {
  TempDir tmp("incomplete");
  Store store(tmp.path.string());
  DocumentRecord r = sample_record("monthless");
  r.dates = {"DD20030300"};  // day unknown
  store.ingest(r);
  Query q;
  q.date_from = "20030101";
  q.date_to = "20031231";
  CHECK(store.query(q).empty());
  r.dates = {"DD00000210"};  // year unknown
  store.ingest(r);
  CHECK(store.query(q).empty());
  r.dates = {"DD20030302"};
  store.ingest(r);
  CHECK(store.query(q) == std::vector<std::string>{"monthless"});
}

TEST_CASE("malformed query ranges are usage errors") {
  TempDir tmp("badquery");
  Store store(tmp.path.string());
  Query q;
  q.date_from = "2003";
  q.date_to = "20031231";
  CHECK_THROWS_AS(store.query(q), UsageError);
  q.date_from = "20040101";
  CHECK_THROWS_AS(store.query(q), UsageError);  // from > to
  q.date_to.reset();
  q.date_from = "200401";
  CHECK_THROWS_AS(store.query(q), UsageError);
}

TEST_CASE("stand-off tables round-trip annotations") {
  std::vector<Annotation> anns;
  Annotation a;
  a.kind = AnnotationKind::place;
  a.offset = 12;
  a.length = 6;
  a.surface = "Ankara";
  a.normalized = "20";
  a.aux = {{"country", "TR"}, {"lat", "39.92"}};
  anns.push_back(a);
  Annotation d;
  d.kind = AnnotationKind::date;
  d.offset = 30;
  d.length = 10;
  d.surface = "13.10.2004";
  d.normalized = "DD20041013";
  d.aux = {{"kind", "absolute"}};
  anns.push_back(d);

  std::string table = export_standoff("doc-9", anns);
  CHECK(table.rfind("doc_id\tkind\toffset\tlength\tsurface\tnormalized\taux\n", 0) == 0);
  std::string doc_id;
  auto parsed = parse_standoff(table, &doc_id);
  CHECK(doc_id == "doc-9");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].kind == AnnotationKind::place);
  CHECK(parsed[0].offset == 12);
  CHECK(parsed[0].surface == "Ankara");
  CHECK(parsed[0].aux_value("country") == "TR");
  CHECK(parsed[1].normalized == "DD20041013");
  CHECK(export_standoff(doc_id, parsed) == table);
}

TEST_CASE("stand-off parsing flags malformed rows") {
  CHECK_THROWS_AS(parse_standoff("h\nd\tplace\t0\t1\ts\tn"), ResourceError);
  CHECK_THROWS_AS(parse_standoff("h\nd\tthing\t0\t1\ts\tn\t"), ResourceError);
  CHECK_THROWS_AS(parse_standoff("h\nd\tplace\t0\t1\ts\tn\tnoequals"), ResourceError);
  CHECK(parse_standoff("header only\n").empty());
}
