#include "breachcost/eventstudy.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "breachcost/config.hpp"
#include "doctest.h"

using namespace breachcost;
using namespace breachcost::eventstudy;
using ingest::BreachCategory;
using ingest::BreachEvent;

namespace {

BreachEvent breach(MonthIndex month, double records) {
  BreachEvent e;
  e.org_name = "org";
  e.month = month;
  e.records = records;
  e.basis = ingest::RecordBasis::kDisclosed;
  return e;
}

}  // namespace

TEST_CASE("detect_mega keeps months at or above the threshold") {
  const std::vector<BreachEvent> events{
      breach(10, 1e7), breach(11, 9999999.0), breach(20, 2e7),
      breach(20, 5e7), breach(30, 1e6),
  };
  const auto months = detect_mega(events, 1e7);
  CHECK(months == std::vector<MonthIndex>{10, 20});
}

TEST_CASE("detect_mega sees imputed counts") {
  BreachEvent imputed = breach(40, 2e7);
  imputed.basis = ingest::RecordBasis::kImputed;
  const auto months = detect_mega({imputed}, 1e7);
  CHECK(months == std::vector<MonthIndex>{40});
}

TEST_CASE("consolidate chains months within the gap") {
  const auto clusters = consolidate({10, 11, 14}, 3);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].t0 == 10);
  CHECK(clusters[0].member_months == std::vector<MonthIndex>{10, 11, 14});

  const auto split = consolidate({10, 11, 15}, 3);
  REQUIRE(split.size() == 2);
  CHECK(split[0].member_months == std::vector<MonthIndex>{10, 11});
  CHECK(split[1].t0 == 15);

  CHECK(consolidate({}, 3).empty());
  CHECK_THROWS_AS(consolidate({5, 4}, 3), std::invalid_argument);
}

TEST_CASE("find_mega_events totals qualifying records per cluster") {
  const std::vector<BreachEvent> events{
      breach(10, 1e7), breach(10, 2e7), breach(10, 100.0),
      breach(12, 3e7), breach(40, 5e7),
  };
  const auto clusters = find_mega_events(events, 1e7, 3);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].member_months == std::vector<MonthIndex>{10, 12});
  // the sub-threshold 100-record event does not count toward the total
  CHECK(clusters[0].total_records == 6e7);
  CHECK(clusters[1].total_records == 5e7);
}

TEST_CASE("window_pairs computes medians around each event") {
  std::vector<double> values(40, 10.0);
  for (std::size_t i = 22; i < values.size(); ++i) values[i] = 14.0;
  const MonthlySeries victims(0, std::move(values));

  MegaEvent event;
  event.t0 = 20;
  event.member_months = {20};
  const auto windows = window_pairs({event}, victims, 2, 6, 6);
  REQUIRE(windows.pairs.size() == 1);
  CHECK(windows.excluded == 0);
  const auto& pair = windows.pairs[0];
  CHECK(pair.pre_values.size() == 6);
  CHECK(pair.post_values.size() == 6);
  CHECK(pair.pre_median == 10.0);
  CHECK(pair.post_median == 14.0);
  CHECK(pair.delta == 4.0);
}

TEST_CASE("window_pairs excludes events whose windows leave the series") {
  const MonthlySeries victims(10, std::vector<double>(20, 5.0));
  MegaEvent early;
  early.t0 = 12;  // pre window would start at 6, before the series
  early.member_months = {12};
  MegaEvent late;
  late.t0 = 28;  // post window would run past the series end
  late.member_months = {28};
  MegaEvent fits;
  fits.t0 = 20;
  fits.member_months = {20};
  const auto windows = window_pairs({early, late, fits}, victims, 2, 4, 4);
  CHECK(windows.pairs.size() == 1);
  CHECK(windows.pairs[0].t0 == 20);
  CHECK(windows.excluded == 2);
}

TEST_CASE("window_pairs skips months poisoned by gaps") {
  MonthlySeries victims(0, std::vector<double>(30, 5.0));
  victims.set_missing(21);
  MegaEvent event;
  event.t0 = 15;
  event.member_months = {15};
  const auto windows = window_pairs({event}, victims, 2, 4, 6);
  CHECK(windows.pairs.empty());
  CHECK(windows.excluded == 1);
}

TEST_CASE("lag_sweep reports a result per lag with diagnostics") {
  std::vector<double> values(60, 100.0);
  for (std::size_t i = 22; i < values.size(); ++i) values[i] += 50.0;
  for (std::size_t i = 42; i < values.size(); ++i) values[i] += 50.0;
  const MonthlySeries victims(0, std::move(values));
  const std::vector<BreachEvent> events{breach(20, 2e7), breach(40, 3e7)};
  const auto clusters = find_mega_events(events, 1e7, 3);
  const auto results = lag_sweep(clusters, victims, 0, 4, 6, 6);
  REQUIRE(results.size() == 5);
  for (const auto& result : results) {
    CHECK(result.diagnostic.empty());
    CHECK(result.n_events == 2);
    REQUIRE(result.deltas.size() == 2);
    REQUIRE(result.event_months.size() == 2);
    CHECK(result.event_months[0] == 20);
    CHECK(result.event_months[1] == 40);
    CHECK(result.p_value.has_value());
    CHECK(result.mean_delta == doctest::Approx(50.0));
  }
  // two positive deltas: one-sided exact tail is 1/4
  CHECK(*results[2].p_value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("lag_sweep flags lags with too few usable events") {
  const MonthlySeries victims(0, std::vector<double>(20, 5.0));
  MegaEvent event;
  event.t0 = 10;
  event.member_months = {10};
  const auto results = lag_sweep({event}, victims, 0, 1, 4, 4);
  for (const auto& result : results) {
    CHECK_FALSE(result.p_value.has_value());
    CHECK(result.diagnostic.find("fewer than 2") != std::string::npos);
  }
}

TEST_CASE("lag_sweep flags degenerate all-zero deltas") {
  const MonthlySeries victims(0, std::vector<double>(40, 5.0));
  const std::vector<BreachEvent> events{breach(12, 2e7), breach(26, 3e7)};
  const auto clusters = find_mega_events(events, 1e7, 3);
  const auto results = lag_sweep(clusters, victims, 0, 0, 4, 4);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].p_value.has_value());
  CHECK(results[0].diagnostic.find("degenerate") != std::string::npos);
  CHECK(results[0].n_events == 2);
}

TEST_CASE("placebo_sweep tests non-mega months under the same rules") {
  PipelineConfig config;
  config.mega_threshold = 1e7;
  config.consolidation_gap = 3;
  config.pre_window = 4;
  config.post_window = 4;
  config.lag_min = 0;
  config.lag_max = 2;

  std::mt19937 rng(5u);
  std::uniform_real_distribution<double> noise(100.0, 110.0);
  std::vector<double> values(60);
  for (auto& v : values) v = noise(rng);
  const MonthlySeries victims(0, std::move(values));

  const std::vector<BreachEvent> events{
      breach(20, 2e7),  // mega: excluded from the placebo set
      breach(12, 1e5), breach(30, 2e5), breach(45, 3e5),
  };
  const auto results = placebo_sweep(events, victims, config);
  REQUIRE(results.size() == 3);
  for (const auto& result : results) {
    CHECK(result.n_events == 3);
    for (const MonthIndex month : result.event_months) CHECK(month != 20);
  }

  // identical to composing the pieces by hand
  const auto mega = detect_mega(events, config.mega_threshold);
  std::vector<MonthIndex> pseudo;
  for (const auto& e : events) {
    bool is_mega = false;
    for (const MonthIndex m : mega) is_mega = is_mega || m == e.month;
    if (!is_mega) pseudo.push_back(e.month);
  }
  const auto clusters = consolidate(pseudo, config.consolidation_gap);
  const auto direct = lag_sweep(clusters, victims, config.lag_min,
                                config.lag_max, config.pre_window,
                                config.post_window);
  REQUIRE(direct.size() == results.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(direct[i].p_value == results[i].p_value);
    CHECK(direct[i].deltas == results[i].deltas);
  }
}

TEST_CASE("lower_bound_cost multiplies delta, window and cost") {
  CHECK(lower_bound_cost(88956.0, 6, 1110.31) ==
        doctest::Approx(88956.0 * 6 * 1110.31).epsilon(1e-12));
  CHECK(lower_bound_cost(10.0, 0, 100.0) == 0.0);
  CHECK_THROWS_AS(lower_bound_cost(-1.0, 6, 100.0), std::domain_error);
  CHECK_THROWS_AS(lower_bound_cost(10.0, -1, 100.0), std::domain_error);
  CHECK_THROWS_AS(lower_bound_cost(10.0, 6, -5.0), std::domain_error);
}
