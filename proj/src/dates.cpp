#include "mixt/dates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "mixt/utf8.hpp"

namespace mixt {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int month_days(int month, int year) {
  static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && (year == 0 || leap(year))) return 29;
  return d[month - 1];
}

}  // namespace

bool valid_day_month(int day, int month, int year) {
  if (month < 0 || month > 12 || day < 0 || day > 31) return false;
  if (day > 0 && month > 0 && day > month_days(month, year)) return false;
  if (day > 0 && month == 0 && day > 31) return false;
  return true;
}

// Howard Hinnant's civil-days algorithm.
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

CalendarDate civil_from_days(long z) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CalendarDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                      static_cast<int>(d)};
}

int weekday_of(const CalendarDate& d) {
  long z = days_from_civil(d.year, d.month, d.day);
  // 1970-01-01 was a Thursday (=4)
  int wd = static_cast<int>(((z % 7) + 7 + 3) % 7) + 1;
  return wd;
}

DateParameterFile load_date_parameters(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open date parameter file: " + path);
  DateParameterFile p;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto tab = line.find('\t');
    std::string surface = utf8::fold(line.substr(0, tab));
    std::string value = tab == std::string::npos ? "" : line.substr(tab + 1);
    auto err = [&](const std::string& why) {
      throw ResourceError(path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (section == "MONTHS") {
      int m = std::stoi(value);
      if (m < 1 || m > 12) err("month out of range");
      p.months[surface] = m;
    } else if (section == "WEEKDAYS") {
      int w = std::stoi(value);
      if (w < 1 || w > 7) err("weekday out of range");
      p.weekdays[surface] = w;
    } else if (section == "ORDINALS") {
      p.ordinals[surface] = std::stoi(value);
    } else if (section == "CARDINALS") {
      p.cardinals[surface] = std::stol(value);
    } else if (section == "FILLERS") {
      p.fillers.insert(surface);
    } else if (section == "RELATIVE") {
      RelativeTerm t;
      if (value.rfind("day:", 0) == 0) {
        t.kind = RelativeTerm::Kind::day_offset;
        t.days = std::stoi(value.substr(4));
      } else if (value == "prev") {
        t.kind = RelativeTerm::Kind::prev;
      } else if (value == "next") {
        t.kind = RelativeTerm::Kind::next;
      } else if (value == "this") {
        t.kind = RelativeTerm::Kind::current;
      } else {
        err("unknown relative semantics: " + value);
      }
      p.relative[surface] = t;
    } else if (section == "ORDER") {
      if (surface == "numeric_order") {
        if (value == "DMY") p.numeric_order = NumericOrder::DMY;
        else if (value == "MDY") p.numeric_order = NumericOrder::MDY;
        else if (value == "YMD") p.numeric_order = NumericOrder::YMD;
        else err("unknown numeric_order: " + value);
      } else if (surface == "day_after_month") {
        p.day_after_month = (value == "yes" || value == "true" || value == "1");
      } else if (surface == "ambiguous_month") {
        p.ambiguous_months.insert(utf8::fold(value));
      } else if (surface == "ordinal_suffixes") {
        std::size_t pos = 0;
        while (pos <= value.size()) {
          auto bar = value.find('|', pos);
          if (bar == std::string::npos) {
            p.ordinal_suffixes.push_back(value.substr(pos));
            break;
          }
          p.ordinal_suffixes.push_back(value.substr(pos, bar - pos));
          pos = bar + 1;
        }
      } else {
        err("unknown ordering rule: " + surface);
      }
    } else {
      err("entry outside any section");
    }
  }
  return p;
}

namespace {

struct Word {
  std::string folded;
  const Token* tok;
};

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// "13.10.2004", "13/10/2004", "2004-09-01" as a single token
std::optional<DateExpression> numeric_date(const Token& tok, const DateParameterFile& p) {
  const std::string& s = tok.surface;
  std::vector<std::string> parts;
  std::string cur;
  char sep = 0;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      cur.push_back(c);
    } else {
      if (sep != 0 && c != sep) return std::nullopt;  // mixed separators
      sep = c;
      parts.push_back(cur);
      cur.clear();
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3 || sep == ',') return std::nullopt;
  for (const auto& part : parts)
    if (part.empty() || part.size() > 4) return std::nullopt;

  int a = std::stoi(parts[0]), b = std::stoi(parts[1]), c = std::stoi(parts[2]);
  int day = 0, month = 0, year = 0;
  if (parts[0].size() == 4 && sep == '-') {
    year = a; month = b; day = c;  // ISO
  } else if (parts[2].size() == 4 && parts[0].size() <= 2 && parts[1].size() <= 2) {
    switch (p.numeric_order) {
      case NumericOrder::MDY: month = a; day = b; break;
      case NumericOrder::DMY:
      case NumericOrder::YMD: day = a; month = b; break;
    }
    year = c;
  } else {
    return std::nullopt;
  }
  if (year < 1000 || year > 2999 || month < 1 || month > 12 || day < 1 ||
      day > month_days(month, year))
    return std::nullopt;
  DateExpression e;
  e.offset = tok.offset;
  e.length = tok.length;
  e.day = day; e.month = month; e.year = year;
  return e;
}

class Matcher {
 public:
  Matcher(const std::vector<Word>& words, const DateParameterFile& p)
      : w_(words), p_(p) {}

  // Longest date expression starting at word index i; consumed words in *used.
  std::optional<DateExpression> match_at(std::size_t i, std::size_t* used) const {
    std::optional<DateExpression> best;
    std::size_t best_used = 0;
    auto consider = [&](std::optional<DateExpression> e, std::size_t n) {
      if (!e) return;
      if (!best || n > best_used) { best = e; best_used = n; }
    };
    if (w_[i].tok->is_numeric) consider(numeric_date(*w_[i].tok, p_), 1);
    std::size_t n = 0;
    auto rel = relative_at(i, &n);
    consider(rel, n);
    n = 0;
    auto day_first = day_first_at(i, &n);
    consider(day_first, n);
    n = 0;
    auto month_first = month_first_at(i, &n);
    consider(month_first, n);
    if (best) *used = best_used;
    return best;
  }

 private:
  const std::vector<Word>& w_;
  const DateParameterFile& p_;

  std::optional<int> day_at(std::size_t i) const {
    if (i >= w_.size()) return std::nullopt;
    const std::string& s = w_[i].folded;
    if (all_digits(s) && s.size() <= 2) {
      int d = std::stoi(s);
      if (d >= 1 && d <= 31) return d;
      return std::nullopt;
    }
    auto it = p_.ordinals.find(s);
    if (it != p_.ordinals.end() && it->second >= 1 && it->second <= 31) return it->second;
    // digit+ordinal-suffix form: 2nd, 13th
    for (const auto& suf : p_.ordinal_suffixes) {
      if (suf.empty() || s.size() <= suf.size()) continue;
      if (s.compare(s.size() - suf.size(), suf.size(), suf) != 0) continue;
      std::string digits = s.substr(0, s.size() - suf.size());
      if (all_digits(digits) && digits.size() <= 2) {
        int d = std::stoi(digits);
        if (d >= 1 && d <= 31) return d;
      }
    }
    return std::nullopt;
  }

  std::optional<int> month_at(std::size_t i) const {
    if (i >= w_.size()) return std::nullopt;
    auto it = p_.months.find(w_[i].folded);
    if (it == p_.months.end()) return std::nullopt;
    return it->second;
  }

  bool ambiguous_month_at(std::size_t i) const {
    return i < w_.size() && p_.ambiguous_months.count(w_[i].folded) > 0;
  }

  // Year: a 4-digit number or a cardinal-word phrase ("two thousand and four").
  std::optional<int> year_at(std::size_t i, std::size_t* used) const {
    if (i >= w_.size()) return std::nullopt;
    const std::string& s = w_[i].folded;
    if (all_digits(s) && s.size() == 4) {
      int y = std::stoi(s);
      if (y >= 1000 && y <= 2999) { *used = 1; return y; }
      return std::nullopt;
    }
    // cardinal composition: value accumulates additively, "thousand"/"hundred"
    // multiply the running group
    long total = 0, group = 0;
    std::size_t j = i;
    bool any = false;
    while (j < w_.size()) {
      auto it = p_.cardinals.find(w_[j].folded);
      if (it == p_.cardinals.end()) {
        if (any && w_[j].folded == "and") { ++j; continue; }
        break;
      }
      long v = it->second;
      if (v == 100 || v == 1000) {
        group = (group == 0 ? 1 : group) * v;
        total += group;
        group = 0;
      } else {
        group += v;
      }
      any = true;
      ++j;
    }
    total += group;
    if (any && total >= 1000 && total <= 2999 && j - i >= 2) {
      *used = j - i;
      return static_cast<int>(total);
    }
    return std::nullopt;
  }

  // Skips filler phrases ("of", "the", "of the year"), longest first.
  std::size_t skip_fillers(std::size_t i) const {
    bool moved = true;
    while (moved && i < w_.size()) {
      moved = false;
      for (std::size_t len = 3; len >= 1; --len) {
        if (i + len > w_.size()) continue;
        std::string phrase = w_[i].folded;
        for (std::size_t k = 1; k < len; ++k) phrase += " " + w_[i + k].folded;
        if (p_.fillers.count(phrase)) {
          i += len;
          moved = true;
          break;
        }
      }
    }
    return i;
  }

  DateExpression span(std::size_t i, std::size_t j) const {  // words [i, j)
    DateExpression e;
    e.offset = w_[i].tok->offset;
    e.length = w_[j - 1].tok->offset + w_[j - 1].tok->length - e.offset;
    return e;
  }

  // DAY [fillers] MONTH [fillers] [YEAR]: 13 October 2004, 13th of October
  std::optional<DateExpression> day_first_at(std::size_t i, std::size_t* used) const {
    auto day = day_at(i);
    if (!day) return std::nullopt;
    std::size_t j = skip_fillers(i + 1);
    auto month = month_at(j);
    if (!month) return std::nullopt;
    std::size_t end = j + 1;
    std::size_t k = skip_fillers(end);
    std::size_t ylen = 0;
    auto year = year_at(k, &ylen);
    if (year) end = k + ylen;
    if (!valid_day_month(*day, *month, year.value_or(0))) return std::nullopt;
    DateExpression e = span(i, end);
    e.day = *day; e.month = *month; e.year = year.value_or(0);
    *used = end - i;
    return e;
  }

  // MONTH DAY [, YEAR] (only when the ordering rule allows it) or MONTH YEAR
  std::optional<DateExpression> month_first_at(std::size_t i, std::size_t* used) const {
    auto month = month_at(i);
    if (!month) return std::nullopt;
    const bool ambiguous = ambiguous_month_at(i);

    if (p_.day_after_month) {
      std::size_t j = skip_fillers(i + 1);
      if (auto day = day_at(j)) {
        std::size_t end = j + 1;
        std::size_t k = skip_fillers(end);
        std::size_t ylen = 0;
        auto year = year_at(k, &ylen);
        if (year) end = k + ylen;
        if (valid_day_month(*day, *month, year.value_or(0))) {
          DateExpression e = span(i, end);
          e.day = *day; e.month = *month; e.year = year.value_or(0);
          *used = end - i;
          return e;
        }
      }
    }
    // MONTH YEAR (incomplete, day unknown)
    std::size_t j = skip_fillers(i + 1);
    std::size_t ylen = 0;
    if (auto year = year_at(j, &ylen)) {
      DateExpression e = span(i, j + ylen);
      e.month = *month; e.year = *year;
      *used = j + ylen - i;
      return e;
    }
    (void)ambiguous;  // a bare month never fires, ambiguous or not
    return std::nullopt;
  }

  // Relative phrases: "yesterday", "last December", "next Monday", ...
  std::optional<DateExpression> relative_at(std::size_t i, std::size_t* used) const {
    // longest relative surface at i (entries may be multi-word)
    const RelativeTerm* term = nullptr;
    std::size_t term_len = 0;
    for (std::size_t len = 4; len >= 1; --len) {
      if (i + len > w_.size()) continue;
      std::string phrase = w_[i].folded;
      for (std::size_t k = 1; k < len; ++k) phrase += " " + w_[i + k].folded;
      auto it = p_.relative.find(phrase);
      if (it != p_.relative.end()) {
        term = &it->second;
        term_len = len;
        break;
      }
    }
    if (term == nullptr) return std::nullopt;

    if (term->kind == RelativeTerm::Kind::day_offset) {
      DateExpression e = span(i, i + term_len);
      e.relative = true;
      e.rel = *term;
      *used = term_len;
      return e;
    }
    // prev/next/current need a month or weekday right after
    std::size_t j = i + term_len;
    if (auto month = month_at(j)) {
      // "this may": a current-marker plus an ambiguous month word stays
      // unrecognized (the modal-verb reading wins)
      if (term->kind == RelativeTerm::Kind::current && ambiguous_month_at(j))
        return std::nullopt;
      DateExpression e = span(i, j + 1);
      e.relative = true;
      e.rel = *term;
      e.month = *month;
      *used = j + 1 - i;
      return e;
    }
    if (j < w_.size()) {
      auto it = p_.weekdays.find(w_[j].folded);
      if (it != p_.weekdays.end()) {
        DateExpression e = span(i, j + 1);
        e.relative = true;
        e.rel = *term;
        e.weekday = it->second;
        *used = j + 1 - i;
        return e;
      }
    }
    return std::nullopt;
  }
};

std::string two(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

std::string four(int v) {
  std::string s = std::to_string(v);
  while (s.size() < 4) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

NormalizedDate resolve(const DateExpression& expr,
                       const std::optional<CalendarDate>& reference) {
  int day = expr.day, month = expr.month, year = expr.year;

  if (expr.relative && expr.rel) {
    if (reference) {
      const CalendarDate& ref = *reference;
      switch (expr.rel->kind) {
        case RelativeTerm::Kind::day_offset: {
          CalendarDate d = civil_from_days(
              days_from_civil(ref.year, ref.month, ref.day) + expr.rel->days);
          day = d.day; month = d.month; year = d.year;
          break;
        }
        case RelativeTerm::Kind::prev:
        case RelativeTerm::Kind::next:
        case RelativeTerm::Kind::current: {
          if (expr.month > 0) {
            month = expr.month;
            if (expr.rel->kind == RelativeTerm::Kind::current) {
              year = ref.year;
            } else if (expr.rel->kind == RelativeTerm::Kind::prev) {
              // most recent such month strictly before the reference month
              year = expr.month < ref.month ? ref.year : ref.year - 1;
            } else {
              year = expr.month > ref.month ? ref.year : ref.year + 1;
            }
          } else if (expr.weekday > 0) {
            long z = days_from_civil(ref.year, ref.month, ref.day);
            int today = weekday_of(ref);
            int diff = expr.weekday - today;
            if (expr.rel->kind == RelativeTerm::Kind::prev) {
              if (diff >= 0) diff -= 7;
            } else {  // next and "this" both look forward
              if (diff <= 0) diff += 7;
            }
            CalendarDate d = civil_from_days(z + diff);
            day = d.day; month = d.month; year = d.year;
          }
          break;
        }
      }
    }
  } else if (day > 0 && month > 0 && year == 0 && reference) {
    year = reference->year;  // absolute day+month takes the reference year
  }

  NormalizedDate out;
  out.canonical = "DD" + four(year) + two(month) + two(day);
  out.complete = day > 0 && month > 0 && year > 0;
  return out;
}

std::vector<DateExpression> find_date_expressions(const Document& doc,
                                                  const DateParameterFile& params) {
  auto tokens = tokenize(doc.text, doc.language);
  std::vector<Word> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back({utf8::fold(t.surface), &t});

  Matcher m(words, params);
  std::vector<DateExpression> out;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t used = 0;
    if (auto e = m.match_at(i, &used)) {
      out.push_back(*e);
      i += used;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Annotation> parse_dates(const Document& doc, const DateParameterFile& params,
                                    std::optional<CalendarDate> reference) {
  if (!reference) reference = doc.reference_date;
  std::vector<Annotation> out;
  for (const auto& e : find_date_expressions(doc, params)) {
    NormalizedDate n = resolve(e, reference);
    Annotation a;
    a.kind = AnnotationKind::date;
    a.offset = e.offset;
    a.length = e.length;
    a.surface = doc.text.substr(e.offset, e.length);
    a.normalized = n.canonical;
    a.aux.emplace_back("kind", e.relative ? "relative" : "absolute");
    a.aux.emplace_back("completeness", n.complete ? "complete" : "incomplete");
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mixt
