// Recognition and normalization of date expressions driven by per-language
// parameter files. Normal form is the 10-character string DD + YYYYMMDD
// with "00" in unresolved positions (DD20041013, DD20031200, ...).

#ifndef MIXT_DATES_HPP
#define MIXT_DATES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mixt/core.hpp"

namespace mixt {

struct RelativeTerm {
  enum class Kind { day_offset, prev, next, current };
  Kind kind = Kind::day_offset;
  int days = 0;  // only for day_offset
};

enum class NumericOrder { DMY, MDY, YMD };

struct DateParameterFile {
  std::string language;
  std::map<std::string, int> months;    // lowercase surface -> 1..12
  std::map<std::string, int> weekdays;  // lowercase surface -> 1..7, Monday = 1
  std::map<std::string, int> ordinals;  // "thirteenth" -> 13
  std::map<std::string, long> cardinals;
  std::set<std::string> fillers;        // "of", "the", "of the year", ...
  std::map<std::string, RelativeTerm> relative;
  NumericOrder numeric_order = NumericOrder::DMY;
  bool day_after_month = false;         // May 2nd
  std::set<std::string> ambiguous_months;      // month words that are also common words
  std::vector<std::string> ordinal_suffixes;   // st, nd, rd, th
};

// Sectioned file: [MONTHS] [WEEKDAYS] [ORDINALS] [CARDINALS] [FILLERS]
// [RELATIVE] [ORDER]; entries "surface \t value".
DateParameterFile load_date_parameters(const std::string& path);

struct DateExpression {
  std::size_t offset = 0;
  std::size_t length = 0;
  bool relative = false;
  // Components as parsed; resolution against a reference date happens in
  // resolve(). 0 = unknown.
  int day = 0, month = 0, year = 0;
  std::optional<RelativeTerm> rel;   // for relative expressions
  int weekday = 0;                   // 1..7 when a weekday expression
};

struct NormalizedDate {
  std::string canonical;  // DD + YYYYMMDD
  bool complete = false;  // day, month, year all resolved
};

bool valid_day_month(int day, int month, int year);  // 0 = unknown is allowed

NormalizedDate resolve(const DateExpression& expr,
                       const std::optional<CalendarDate>& reference);

std::vector<DateExpression> find_date_expressions(const Document& doc,
                                                  const DateParameterFile& params);

// Non-overlapping maximal date expressions, annotated with the canonical
// normal form. The reference date defaults to the document's.
std::vector<Annotation> parse_dates(const Document& doc, const DateParameterFile& params,
                                    std::optional<CalendarDate> reference = std::nullopt);

// Day arithmetic used by relative resolution (proleptic Gregorian).
long days_from_civil(int y, int m, int d);
CalendarDate civil_from_days(long z);
int weekday_of(const CalendarDate& d);  // Monday = 1

}  // namespace mixt

#endif
