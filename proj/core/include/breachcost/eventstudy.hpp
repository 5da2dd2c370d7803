#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "breachcost/config.hpp"
#include "breachcost/ingest.hpp"
#include "breachcost/monthly_series.hpp"

namespace breachcost::eventstudy {

// A mega breach, or several of them chained into one compound event.
struct MegaEvent {
  MonthIndex t0 = 0;  // first member month
  std::vector<MonthIndex> member_months;  // sorted
  double total_records = 0.0;
};

// Months containing at least one breach of >= threshold records (sorted,
// unique). The comparison is inclusive and sees imputed counts.
std::vector<MonthIndex> detect_mega(
    const std::vector<ingest::BreachEvent>& events, double threshold);

// Chains sorted months into compound events: a month joins the current
// cluster when it is at most `gap` months past the cluster's latest member.
std::vector<MegaEvent> consolidate(const std::vector<MonthIndex>& months,
                                   int gap);

// detect + consolidate, with each cluster's total over the qualifying
// breach records in its member months.
std::vector<MegaEvent> find_mega_events(
    const std::vector<ingest::BreachEvent>& events, double threshold, int gap);

struct EventWindowPair {
  MonthIndex t0 = 0;
  int lag = 0;
  std::vector<double> pre_values;   // victims over [t0-pre, t0-1]
  std::vector<double> post_values;  // victims over [t0+lag, t0+lag+post-1]
  double pre_median = 0.0;
  double post_median = 0.0;
  double delta = 0.0;  // post_median - pre_median
};

struct WindowPairs {
  std::vector<EventWindowPair> pairs;
  std::size_t excluded = 0;  // events whose windows left the covered range
};

WindowPairs window_pairs(const std::vector<MegaEvent>& events,
                         const MonthlySeries& victims, int lag,
                         int pre_window, int post_window);

struct EventStudyResult {
  int lag = 0;
  std::size_t n_events = 0;
  std::optional<double> w_plus;
  std::optional<double> p_value;  // one-sided
  double mean_delta = 0.0;        // mean of per-event deltas
  std::vector<double> deltas;
  std::vector<MonthIndex> event_months;  // t0 behind each delta
  std::size_t excluded_events = 0;
  std::string diagnostic;  // empty when the test ran
};

// Wilcoxon signed-rank of post vs. pre medians at every lag in
// [lag_min, lag_max]. Lags with fewer than two usable events, or where all
// deltas vanish, carry a diagnostic instead of a p-value.
std::vector<EventStudyResult> lag_sweep(const std::vector<MegaEvent>& events,
                                        const MonthlySeries& victims,
                                        int lag_min, int lag_max,
                                        int pre_window, int post_window);

// The same sweep over pseudo-events: months with breach activity but no
// mega breach, consolidated under the same gap rule.
std::vector<EventStudyResult> placebo_sweep(
    const std::vector<ingest::BreachEvent>& events,
    const MonthlySeries& victims, const PipelineConfig& config);

// delta victims/month, sustained for `window_months`, costed per victim.
double lower_bound_cost(double delta_per_month, int window_months,
                        double per_victim_cost);

}  // namespace breachcost::eventstudy
