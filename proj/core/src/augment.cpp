#include "breachcost/augment.hpp"

#include <cmath>
#include <stdexcept>

#include "breachcost/stats.hpp"

namespace breachcost::augment {

OlsSlope fit_state_national(const std::vector<ingest::MatchedPair>& pairs,
                            bool with_intercept) {
  if (pairs.size() < 2) {
    throw std::invalid_argument(
        "insufficient data: need at least 2 calibration pairs, got " +
        std::to_string(pairs.size()));
  }

  double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
  for (const auto& pair : pairs) {
    const double x = static_cast<double>(pair.state_residents);
    const double y = pair.national_records;
    sum_x += x;
    sum_y += y;
    sum_xx += x * x;
    sum_xy += x * y;
  }
  if (sum_xx == 0.0) {
    throw std::domain_error("degenerate regression: all resident counts zero");
  }

  OlsSlope fit;
  fit.n_pairs = pairs.size();
  fit.with_intercept = with_intercept;
  if (with_intercept) {
    const double n = static_cast<double>(pairs.size());
    const double det = n * sum_xx - sum_x * sum_x;
    if (det == 0.0) {
      throw std::domain_error(
          "degenerate regression: resident counts all equal");
    }
    fit.slope = (n * sum_xy - sum_x * sum_y) / det;
    fit.intercept = (sum_y - fit.slope * sum_x) / n;
  } else {
    fit.slope = sum_xy / sum_xx;
  }

  for (const auto& pair : pairs) {
    const double x = static_cast<double>(pair.state_residents);
    const double r = pair.national_records - (fit.intercept + fit.slope * x);
    fit.residual_sum_squares += r * r;
  }
  if (!std::isfinite(fit.slope) || !std::isfinite(fit.intercept)) {
    throw std::domain_error("regression produced non-finite coefficients");
  }
  return fit;
}

double estimate_national(long long state_residents, const OlsSlope& slope) {
  return slope.intercept +
         slope.slope * static_cast<double>(state_residents);
}

CategoryWeights category_median_weights(
    const std::vector<ingest::BreachEvent>& events) {
  std::map<ingest::BreachCategory, std::vector<double>> disclosed;
  for (const auto& event : events) {
    if (event.basis == ingest::RecordBasis::kDisclosed && event.records) {
      disclosed[event.category].push_back(*event.records);
    }
  }
  CategoryWeights weights;
  for (auto& [category, counts] : disclosed) {
    weights[category] = stats::median(std::move(counts));
  }
  return weights;
}

CategoryCounts undisclosed_counts(
    const std::vector<ingest::BreachEvent>& events) {
  CategoryCounts counts;
  for (const auto& event : events) {
    if (event.basis == ingest::RecordBasis::kUndisclosed) {
      ++counts[event.category];
    }
  }
  return counts;
}

ImputationBaseline annual_baseline(const CategoryCounts& counts,
                                   const CategoryWeights& weights,
                                   int baseline_years) {
  if (baseline_years < 1) {
    throw std::domain_error("baseline years must be at least 1");
  }
  double total = 0.0;
  for (const auto& [category, count] : counts) {
    const auto weight = weights.find(category);
    if (weight == weights.end()) {
      throw std::invalid_argument(
          std::string("no median weight for category '") +
          ingest::to_string(category) + "'");
    }
    total += static_cast<double>(count) * weight->second;
  }

  ImputationBaseline baseline;
  baseline.category_weights = weights;
  baseline.category_counts = counts;
  baseline.baseline_years = baseline_years;
  baseline.annual_volume = total / static_cast<double>(baseline_years);
  return baseline;
}

std::vector<ingest::BreachEvent> impute_undisclosed(
    std::vector<ingest::BreachEvent> events,
    const ImputationBaseline& baseline) {
  if (baseline.annual_volume < 0.0) {
    throw std::domain_error("negative annual baseline volume");
  }
  std::map<int, std::size_t> undisclosed_per_year;
  for (const auto& event : events) {
    if (event.basis == ingest::RecordBasis::kUndisclosed) {
      ++undisclosed_per_year[year_of(event.month)];
    }
  }
  for (auto& event : events) {
    if (event.basis != ingest::RecordBasis::kUndisclosed) continue;
    const std::size_t n_year = undisclosed_per_year.at(year_of(event.month));
    event.records = baseline.annual_volume / static_cast<double>(n_year);
    event.basis = ingest::RecordBasis::kImputed;
  }
  return events;
}

std::vector<ingest::BreachEvent> apply_state_estimates(
    std::vector<ingest::BreachEvent> events, const OlsSlope& slope) {
  for (auto& event : events) {
    if (event.records || !event.state_residents) continue;
    event.records = estimate_national(*event.state_residents, slope);
    event.basis = ingest::RecordBasis::kEstimated;
  }
  return events;
}

}  // namespace breachcost::augment
