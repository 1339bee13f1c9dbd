#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mixt/dates.hpp"

using namespace mixt;

namespace {

const std::string kData = MIXT_DATA_DIR;
const std::string kFixtures = MIXT_FIXTURE_DIR;

const DateParameterFile& params_for(const std::string& lang) {
  static std::map<std::string, DateParameterFile> cache;
  auto it = cache.find(lang);
  if (it == cache.end())
    it = cache.emplace(lang, load_date_parameters(kData + "/dates/" + lang + ".params"))
             .first;
  return it->second;
}

std::optional<CalendarDate> ref_of(const std::string& s) {
  if (s == "-") return std::nullopt;
  return CalendarDate{std::stoi(s.substr(0, 4)), std::stoi(s.substr(5, 2)),
                      std::stoi(s.substr(8, 2))};
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

}  // namespace

TEST_CASE("the bundled fixture normalizes with 100% exact match under 1s") {
  std::ifstream in(kFixtures + "/dates_fixture.tsv");
  REQUIRE(in.good());
  std::string line;
  std::size_t expressions = 0;
  auto started = std::chrono::steady_clock::now();
  while (std::getline(in, line)) {
    auto f = split(line, '\t');
    REQUIRE(f.size() == 4);
    Document d;
    d.id = "fx";
    d.text = f[2];
    d.language = f[0];
    auto anns = parse_dates(d, params_for(f[0]), ref_of(f[1]));
    std::vector<std::string> got;
    for (const auto& a : anns) got.push_back(a.normalized);
    std::vector<std::string> want;
    if (f[3] != "-") want = split(f[3], '|');
    INFO("text: ", f[2]);
    CHECK(got == want);
    expressions += want.size();
  }
  auto elapsed = std::chrono::steady_clock::now() - started;
  CHECK(expressions >= 60);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 1000);
}

TEST_CASE("incomplete and relative expressions are labeled") {
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "It happened in October 2004, not yesterday.";
  auto anns = parse_dates(d, params_for("en"), CalendarDate{2004, 10, 13});
  REQUIRE(anns.size() == 2);
  CHECK(anns[0].normalized == "DD20041000");
  CHECK(anns[0].aux_value("kind") == "absolute");
  CHECK(anns[0].aux_value("completeness") == "incomplete");
  CHECK(anns[1].normalized == "DD20041012");
  CHECK(anns[1].aux_value("kind") == "relative");
  CHECK(anns[1].aux_value("completeness") == "complete");
}

TEST_CASE("relative month without a reference stays unresolved") {
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "He resigned last December.";
  auto anns = parse_dates(d, params_for("en"));
  REQUIRE(anns.size() == 1);
  CHECK(anns[0].normalized == "DD00001200");
  CHECK(anns[0].aux_value("completeness") == "incomplete");
}

TEST_CASE("civil day arithmetic round-trips and matches known anchors") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(2000, 3, 1) == 11017);
  for (long z : {-1000L, -1L, 0L, 1L, 59L, 60L, 365L, 10957L, 20000L}) {
    CalendarDate d = civil_from_days(z);
    CHECK(days_from_civil(d.year, d.month, d.day) == z);
  }
  CHECK(weekday_of({1970, 1, 1}) == 4);
  CHECK(weekday_of({2004, 10, 13}) == 3);
  CHECK(weekday_of({2004, 10, 18}) == 1);
}

TEST_CASE("valid_day_month knows month lengths and leap years") {
  CHECK(valid_day_month(29, 2, 2004));
  CHECK_FALSE(valid_day_month(29, 2, 2003));
  CHECK(valid_day_month(29, 2, 0));
  CHECK_FALSE(valid_day_month(31, 4, 2004));
  CHECK(valid_day_month(0, 10, 2004));
  CHECK(valid_day_month(13, 0, 0));
  CHECK_FALSE(valid_day_month(32, 0, 0));
}

TEST_CASE("resolution canonical form pads every field") {
  DateExpression e;
  e.day = 3;
  e.month = 7;
  e.year = 850;
  auto n = resolve(e, std::nullopt);
  CHECK(n.canonical == "DD08500703");
  CHECK(n.complete);
  DateExpression unknown;
  CHECK(resolve(unknown, std::nullopt).canonical == "DD00000000");
}

TEST_CASE("mixed numeric separators are rejected") {
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "Broken stamp 13.10/2004 in the margin.";
  CHECK(parse_dates(d, params_for("en")).empty());
}

TEST_CASE("leftmost longest match consumes its tokens once") {
  Document d;
  d.id = "t";
  d.language = "en";
  d.text = "On 13 October 2004 the vote was held.";
  auto exprs = find_date_expressions(d, params_for("en"));
  REQUIRE(exprs.size() == 1);
  CHECK(d.text.substr(exprs[0].offset, exprs[0].length) == "13 October 2004");
}

TEST_CASE("parameter files refuse out-of-range values") {
  std::string bad = std::string(MIXT_FIXTURE_DIR) + "/bad.params";
  {
    std::ofstream out(bad);
    out << "[MONTHS]\nundecimber\t13\n";
  }
  CHECK_THROWS_AS(load_date_parameters(bad), ResourceError);
  std::remove(bad.c_str());
}
