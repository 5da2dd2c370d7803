#include "breachcost/eventstudy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "breachcost/stats.hpp"
#include "breachcost/wilcoxon.hpp"

namespace breachcost::eventstudy {

std::vector<MonthIndex> detect_mega(
    const std::vector<ingest::BreachEvent>& events, double threshold) {
  if (!(threshold > 0.0)) {
    throw std::domain_error("mega threshold must be positive");
  }
  std::set<MonthIndex> months;
  for (const auto& event : events) {
    if (event.records && *event.records >= threshold) {
      months.insert(event.month);
    }
  }
  return {months.begin(), months.end()};
}

std::vector<MegaEvent> consolidate(const std::vector<MonthIndex>& months,
                                   int gap) {
  if (gap < 0) {
    throw std::domain_error("consolidation gap must be non-negative");
  }
  if (!std::is_sorted(months.begin(), months.end())) {
    throw std::invalid_argument("months must be sorted");
  }
  std::vector<MegaEvent> clusters;
  for (MonthIndex month : months) {
    if (!clusters.empty() &&
        month - clusters.back().member_months.back() <= gap) {
      if (month != clusters.back().member_months.back()) {
        clusters.back().member_months.push_back(month);
      }
      continue;
    }
    MegaEvent cluster;
    cluster.t0 = month;
    cluster.member_months.push_back(month);
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::vector<MegaEvent> find_mega_events(
    const std::vector<ingest::BreachEvent>& events, double threshold,
    int gap) {
  std::vector<MegaEvent> clusters =
      consolidate(detect_mega(events, threshold), gap);
  for (auto& cluster : clusters) {
    for (const auto& event : events) {
      if (event.records && *event.records >= threshold &&
          std::binary_search(cluster.member_months.begin(),
                             cluster.member_months.end(), event.month)) {
        cluster.total_records += *event.records;
      }
    }
  }
  return clusters;
}

WindowPairs window_pairs(const std::vector<MegaEvent>& events,
                         const MonthlySeries& victims, int lag,
                         int pre_window, int post_window) {
  if (lag < 0) throw std::domain_error("lag must be non-negative");
  if (pre_window < 1 || post_window < 1) {
    throw std::domain_error("windows must span at least one month");
  }

  WindowPairs out;
  for (const auto& event : events) {
    const MonthIndex pre_first = event.t0 - pre_window;
    const MonthIndex pre_last = event.t0 - 1;
    const MonthIndex post_first = event.t0 + lag;
    const MonthIndex post_last = event.t0 + lag + post_window - 1;

    const auto usable = [&victims](MonthIndex first, MonthIndex last) {
      for (MonthIndex t = first; t <= last; ++t) {
        if (!victims.covers(t) || !victims.defined(victims.index_of(t))) {
          return false;
        }
      }
      return true;
    };
    if (!usable(pre_first, pre_last) || !usable(post_first, post_last)) {
      ++out.excluded;
      continue;
    }

    EventWindowPair pair;
    pair.t0 = event.t0;
    pair.lag = lag;
    for (MonthIndex t = pre_first; t <= pre_last; ++t) {
      pair.pre_values.push_back(victims.value_at(t));
    }
    for (MonthIndex t = post_first; t <= post_last; ++t) {
      pair.post_values.push_back(victims.value_at(t));
    }
    pair.pre_median = stats::median(pair.pre_values);
    pair.post_median = stats::median(pair.post_values);
    pair.delta = pair.post_median - pair.pre_median;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

std::vector<EventStudyResult> lag_sweep(const std::vector<MegaEvent>& events,
                                        const MonthlySeries& victims,
                                        int lag_min, int lag_max,
                                        int pre_window, int post_window) {
  if (lag_min < 0 || lag_max < lag_min) {
    throw std::domain_error("bad lag range");
  }
  std::vector<EventStudyResult> results;
  for (int lag = lag_min; lag <= lag_max; ++lag) {
    const WindowPairs windows =
        window_pairs(events, victims, lag, pre_window, post_window);

    EventStudyResult result;
    result.lag = lag;
    result.n_events = windows.pairs.size();
    result.excluded_events = windows.excluded;

    std::vector<double> pre, post;
    for (const auto& pair : windows.pairs) {
      pre.push_back(pair.pre_median);
      post.push_back(pair.post_median);
      result.deltas.push_back(pair.delta);
      result.event_months.push_back(pair.t0);
    }
    if (!result.deltas.empty()) {
      result.mean_delta = stats::mean(result.deltas);
    }

    if (windows.pairs.size() < 2) {
      result.diagnostic = "fewer than 2 usable events";
    } else {
      try {
        const stats::WilcoxonResult test =
            stats::wilcoxon_signed_rank(pre, post);
        result.w_plus = test.w_plus;
        result.p_value = test.p_value;
      } catch (const std::domain_error&) {
        result.diagnostic = "degenerate sample: all differences are zero";
      }
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::vector<EventStudyResult> placebo_sweep(
    const std::vector<ingest::BreachEvent>& events,
    const MonthlySeries& victims, const PipelineConfig& config) {
  const std::vector<MonthIndex> mega =
      detect_mega(events, config.mega_threshold);
  std::set<MonthIndex> pseudo;
  for (const auto& event : events) pseudo.insert(event.month);
  for (MonthIndex month : mega) pseudo.erase(month);

  const std::vector<MegaEvent> clusters = consolidate(
      {pseudo.begin(), pseudo.end()}, config.consolidation_gap);
  return lag_sweep(clusters, victims, config.lag_min, config.lag_max,
                   config.pre_window, config.post_window);
}

double lower_bound_cost(double delta_per_month, int window_months,
                        double per_victim_cost) {
  if (delta_per_month < 0.0 || window_months < 0 || per_victim_cost < 0.0) {
    throw std::domain_error("lower-bound inputs must be non-negative");
  }
  return delta_per_month * static_cast<double>(window_months) *
         per_victim_cost;
}

}  // namespace breachcost::eventstudy
