#include "breachcost/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace breachcost::stats {

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2.0;
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty sample");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace breachcost::stats
