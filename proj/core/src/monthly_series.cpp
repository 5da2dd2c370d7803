#include "breachcost/monthly_series.hpp"

#include <cmath>
#include <stdexcept>

namespace breachcost {

const char* to_string(SeriesFlag flag) {
  switch (flag) {
    case SeriesFlag::kObserved:
      return "observed";
    case SeriesFlag::kInterpolated:
      return "interpolated";
    case SeriesFlag::kImputed:
      return "imputed";
    case SeriesFlag::kMissing:
      return "missing";
  }
  throw std::invalid_argument("unknown series flag");
}

SeriesFlag series_flag_from_string(const std::string& text) {
  if (text == "observed") return SeriesFlag::kObserved;
  if (text == "interpolated") return SeriesFlag::kInterpolated;
  if (text == "imputed") return SeriesFlag::kImputed;
  if (text == "missing") return SeriesFlag::kMissing;
  throw std::invalid_argument("unknown series flag '" + text + "'");
}

SeriesFlag worst_flag(SeriesFlag a, SeriesFlag b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

namespace {

void check_entry(MonthIndex t, double value, SeriesFlag flag) {
  if (flag == SeriesFlag::kMissing) return;
  if (!std::isfinite(value) || value < 0.0) {
    throw std::domain_error("series value at " + format_month(t) +
                            " must be finite and non-negative");
  }
}

}  // namespace

MonthlySeries::MonthlySeries(MonthIndex start, std::vector<double> values,
                             std::vector<SeriesFlag> flags)
    : start_(start), values_(std::move(values)), flags_(std::move(flags)) {
  if (values_.size() != flags_.size()) {
    throw std::invalid_argument("series values and flags differ in length");
  }
  if (!values_.empty()) {
    if (!in_study_window(start_) || !in_study_window(last())) {
      throw std::domain_error("series months leave the study window");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    check_entry(month_at(i), values_[i], flags_[i]);
    if (flags_[i] == SeriesFlag::kMissing) values_[i] = 0.0;
  }
}

MonthlySeries::MonthlySeries(MonthIndex start, std::vector<double> values,
                             SeriesFlag flag) {
  std::vector<SeriesFlag> flags(values.size(), flag);
  *this = MonthlySeries(start, std::move(values), std::move(flags));
}

MonthlySeries MonthlySeries::constant(MonthIndex start, std::size_t length,
                                      double value, SeriesFlag flag) {
  return MonthlySeries(start, std::vector<double>(length, value),
                       std::vector<SeriesFlag>(length, flag));
}

bool MonthlySeries::covers(MonthIndex t) const {
  return !empty() && t >= start_ && t <= last();
}

std::size_t MonthlySeries::index_of(MonthIndex t) const {
  if (!covers(t)) {
    throw std::out_of_range("series does not cover " + format_month(t));
  }
  return static_cast<std::size_t>(t - start_);
}

double MonthlySeries::value_at(MonthIndex t) const {
  return values_[index_of(t)];
}

SeriesFlag MonthlySeries::flag_at(MonthIndex t) const {
  return flags_[index_of(t)];
}

void MonthlySeries::set(std::size_t i, double value, SeriesFlag flag) {
  check_entry(month_at(i), value, flag);
  values_.at(i) = flag == SeriesFlag::kMissing ? 0.0 : value;
  flags_.at(i) = flag;
}

void MonthlySeries::set_missing(std::size_t i) {
  set(i, 0.0, SeriesFlag::kMissing);
}

}  // namespace breachcost
