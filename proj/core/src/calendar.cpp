#include "breachcost/calendar.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace breachcost {

MonthIndex month_index(int year, int month) {
  if (year < kStudyStartYear) {
    throw std::domain_error("year " + std::to_string(year) +
                            " precedes the study calendar (starts " +
                            std::to_string(kStudyStartYear) + ")");
  }
  if (month < 1 || month > 12) {
    throw std::domain_error("month " + std::to_string(month) +
                            " outside 1..12");
  }
  return 12 * (year - kStudyStartYear) + (month - 1);
}

MonthIndex month_index(const YearMonth& ym) {
  return month_index(ym.year, ym.month);
}

YearMonth year_month_of(MonthIndex t) {
  if (t < 0) {
    throw std::domain_error("negative month index " + std::to_string(t));
  }
  return {kStudyStartYear + t / 12, t % 12 + 1};
}

int year_of(MonthIndex t) { return year_month_of(t).year; }

bool in_study_window(MonthIndex t) {
  return t >= kFirstStudyMonth && t <= kLastStudyMonth;
}

std::string format_month(MonthIndex t) {
  const YearMonth ym = year_month_of(t);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", ym.year, ym.month);
  return buf;
}

YearMonth parse_year_month(const std::string& text) {
  const auto fail = [&text]() {
    throw std::invalid_argument("bad month '" + text + "': expected YYYY-MM");
  };
  if (text.size() != 7 || text[4] != '-') fail();
  for (int i : {0, 1, 2, 3, 5, 6}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
  }
  const int year = std::stoi(text.substr(0, 4));
  const int month = std::stoi(text.substr(5, 2));
  if (month < 1 || month > 12) fail();
  return {year, month};
}

MonthIndex parse_month(const std::string& text) {
  return month_index(parse_year_month(text));
}

}  // namespace breachcost
