#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "breachcost/calendar.hpp"

namespace breachcost {

// Provenance of one series entry. kMissing marks months where no value is
// defined (for instance a zero denominator); the stored value there is 0
// and consumers are expected to skip it.
enum class SeriesFlag { kObserved, kInterpolated, kImputed, kMissing };

const char* to_string(SeriesFlag flag);
SeriesFlag series_flag_from_string(const std::string& text);

// The more "derived" of two provenances. Combining anything with kMissing
// yields kMissing.
SeriesFlag worst_flag(SeriesFlag a, SeriesFlag b);

// One value per month over a contiguous slice of the study calendar.
// Values are finite and non-negative; the covered months all lie inside
// the study window.
class MonthlySeries {
 public:
  MonthlySeries() = default;
  MonthlySeries(MonthIndex start, std::vector<double> values,
                std::vector<SeriesFlag> flags);
  MonthlySeries(MonthIndex start, std::vector<double> values,
                SeriesFlag flag = SeriesFlag::kObserved);

  static MonthlySeries constant(MonthIndex start, std::size_t length,
                                double value,
                                SeriesFlag flag = SeriesFlag::kObserved);

  MonthIndex start() const { return start_; }
  MonthIndex last() const {
    return start_ + static_cast<MonthIndex>(values_.size()) - 1;
  }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  MonthIndex month_at(std::size_t i) const {
    return start_ + static_cast<MonthIndex>(i);
  }
  double value(std::size_t i) const { return values_.at(i); }
  SeriesFlag flag(std::size_t i) const { return flags_.at(i); }
  bool defined(std::size_t i) const {
    return flags_.at(i) != SeriesFlag::kMissing;
  }

  bool covers(MonthIndex t) const;
  std::size_t index_of(MonthIndex t) const;  // throws std::out_of_range
  double value_at(MonthIndex t) const;
  SeriesFlag flag_at(MonthIndex t) const;

  void set(std::size_t i, double value, SeriesFlag flag);
  void set_missing(std::size_t i);

  const std::vector<double>& values() const { return values_; }
  const std::vector<SeriesFlag>& flags() const { return flags_; }

 private:
  MonthIndex start_ = kFirstStudyMonth;
  std::vector<double> values_;
  std::vector<SeriesFlag> flags_;
};

}  // namespace breachcost
