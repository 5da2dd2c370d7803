#pragma once

#include <string>

namespace breachcost {

// Months are indexed on a fixed study calendar: t = 0 is January 2008 and
// t = 167 is December 2021. Indices past 167 are representable (config
// tables reference later years) but series data never leaves the window.
using MonthIndex = int;

inline constexpr int kStudyStartYear = 2008;
inline constexpr MonthIndex kFirstStudyMonth = 0;
inline constexpr MonthIndex kLastStudyMonth = 167;
inline constexpr int kStudyMonthCount = 168;

struct YearMonth {
  int year = kStudyStartYear;
  int month = 1;  // 1..12
  bool operator==(const YearMonth&) const = default;
};

// Throws std::domain_error for years before the calendar start or months
// outside 1..12.
MonthIndex month_index(int year, int month);
MonthIndex month_index(const YearMonth& ym);

YearMonth year_month_of(MonthIndex t);
int year_of(MonthIndex t);

bool in_study_window(MonthIndex t);

std::string format_month(MonthIndex t);

// Strict "YYYY-MM". Accepts any four-digit year so callers can reject
// out-of-window rows themselves; throws std::invalid_argument on bad shape.
YearMonth parse_year_month(const std::string& text);

// parse_year_month + month_index.
MonthIndex parse_month(const std::string& text);

}  // namespace breachcost
