#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "breachcost/ingest.hpp"

namespace breachcost::augment {

struct OlsSlope {
  double slope = 0.0;  // national records per state resident
  double intercept = 0.0;  // zero unless fitted with an intercept
  std::size_t n_pairs = 0;
  double residual_sum_squares = 0.0;
  bool with_intercept = false;
};

// National-records-per-resident regression over calibration pairs. The
// default fit is through the origin, slope = sum(XY) / sum(X^2); the
// intercept variant exists for sensitivity runs.
// Throws std::invalid_argument with fewer than 2 pairs and
// std::domain_error when every X is zero.
OlsSlope fit_state_national(const std::vector<ingest::MatchedPair>& pairs,
                            bool with_intercept = false);

double estimate_national(long long state_residents, const OlsSlope& slope);

using CategoryWeights = std::map<ingest::BreachCategory, double>;
using CategoryCounts = std::map<ingest::BreachCategory, std::size_t>;

// W_j: median disclosed record count per category. Categories with no
// disclosed events are absent.
CategoryWeights category_median_weights(
    const std::vector<ingest::BreachEvent>& events);

// l_j: undisclosed incidents per category.
CategoryCounts undisclosed_counts(const std::vector<ingest::BreachEvent>& events);

struct ImputationBaseline {
  CategoryWeights category_weights;  // W_j
  CategoryCounts category_counts;    // l_j
  double annual_volume = 0.0;        // n_u, records per year
  int baseline_years = 0;            // T
};

// n_u = (1 / T) * sum_j l_j * W_j. Every l_j category must have a weight.
ImputationBaseline annual_baseline(const CategoryCounts& counts,
                                   const CategoryWeights& weights,
                                   int baseline_years);

// Spreads each calendar year's share of n_u evenly over that year's
// undisclosed events: every such event in year y receives
// n_u / (undisclosed events in y), flagged imputed. Disclosed, estimated
// and already-imputed counts are untouched.
std::vector<ingest::BreachEvent> impute_undisclosed(
    std::vector<ingest::BreachEvent> events,
    const ImputationBaseline& baseline);

// Fills events that carry state_residents but no record count with
// slope * residents, flagged estimated.
std::vector<ingest::BreachEvent> apply_state_estimates(
    std::vector<ingest::BreachEvent> events, const OlsSlope& slope);

}  // namespace breachcost::augment
