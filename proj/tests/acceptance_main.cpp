// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit 0 only when
// every criterion holds at its stated tolerance.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "breachcost/augment.hpp"
#include "breachcost/calendar.hpp"
#include "breachcost/config.hpp"
#include "breachcost/eventstudy.hpp"
#include "breachcost/ingest.hpp"
#include "breachcost/io.hpp"
#include "breachcost/monthly_series.hpp"
#include "breachcost/projection.hpp"
#include "breachcost/series_ops.hpp"
#include "breachcost/socialcost.hpp"
#include "breachcost/wilcoxon.hpp"

using namespace breachcost;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool condition, const std::string& message) {
    if (condition || !failure_.empty()) return;
    failure_ = message;
  }

  template <typename T>
  void track_max(T& current, T candidate) const {
    current = std::max(current, candidate);
  }

  Outcome done(const std::string& pass_detail) const {
    if (failure_.empty()) return {true, pass_detail};
    return {false, failure_};
  }

 private:
  std::string failure_;
};

std::string fmt(const char* format, ...) {
  char buffer[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

std::string data_path(const std::string& name) {
  return std::string(BREACHCOST_DATA_PATH) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double rel_gap(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Cost table: six rows from the survey aggregates; component sums within
//    0.02 of the printed per-victim totals, national totals within 0.1%.
//    Under one second.

Outcome criterion_cost_table() {
  const auto t0 = Clock::now();
  Checker check;

  std::ifstream survey_in(data_path("survey.csv"));
  const auto waves = socialcost::load_survey_csv(survey_in);
  std::ifstream wages_in(data_path("wages.csv"));
  const auto wages = socialcost::load_wages_csv(wages_in);
  std::ifstream cpi_in(data_path("cpi.csv"));
  const auto cpi = socialcost::load_cpi_csv(cpi_in);
  std::ifstream services_in(data_path("services.cfg"));
  const auto services =
      socialcost::load_services_config(services_in, "services.cfg");
  const auto printed = io::cost_rows_from_json(slurp(data_path("costs.json")));

  check.require(waves.size() == 6,
                fmt("expected 6 survey waves, got %zu", waves.size()));
  double worst_component = 0.0;
  double worst_national = 0.0;
  for (const auto& wave : waves) {
    const auto row = socialcost::cost_components(wave, cpi, wages, services);
    const auto ref = std::find_if(
        printed.begin(), printed.end(),
        [&](const auto& r) { return r.year == wave.year; });
    check.require(ref != printed.end(),
                  fmt("no printed row for %d", wave.year));
    if (ref == printed.end()) continue;
    const double component_sum =
        row.avg_oop + row.avg_legal + row.avg_lost_time + row.avg_healthcare;
    const double component_gap =
        std::abs(component_sum - ref->total_per_victim);
    const double national_gap =
        rel_gap(row.total_national, ref->total_national);
    check.track_max(worst_component, component_gap);
    check.track_max(worst_national, national_gap);
    check.require(component_gap <= 0.02,
                  fmt("%d: component sum %.4f vs printed %.2f (gap %.4f)",
                      wave.year, component_sum, ref->total_per_victim,
                      component_gap));
    check.require(national_gap <= 0.001,
                  fmt("%d: national %.0f vs printed %.0f (gap %.4f%%)",
                      wave.year, row.total_national, ref->total_national,
                      100.0 * national_gap));
  }
  const double elapsed = ms_since(t0);
  check.require(elapsed < 1000.0, fmt("took %.0f ms", elapsed));
  return check.done(fmt(
      "6 rows, component gap <= %.4f (tol 0.02), national gap <= %.4f%% "
      "(tol 0.1%%), %.1f ms",
      worst_component, 100.0 * worst_national, elapsed));
}

// ---------------------------------------------------------------------------
// 2. Inflation arithmetic: six adjusted wages and four adjusted service
//    costs, each within 0.01 of the printed figure.

Outcome criterion_inflation() {
  Checker check;
  const auto cpi = socialcost::CpiTable::defaults();

  struct WageRow {
    int year;
    double nominal;
    double printed;
  };
  const WageRow wage_rows[] = {
      {2008, 21.19, 26.67}, {2012, 23.26, 27.03}, {2014, 24.23, 27.73},
      {2016, 25.37, 28.64}, {2018, 26.72, 28.83}, {2021, 29.92, 29.92},
  };
  double worst = 0.0;
  for (const auto& row : wage_rows) {
    const double adjusted =
        socialcost::adjust_inflation(row.nominal, row.year, cpi);
    const double gap = std::abs(adjusted - row.printed);
    check.track_max(worst, gap);
    check.require(gap <= 0.01, fmt("wage %d: %.4f vs %.2f", row.year,
                                   adjusted, row.printed));
  }

  const auto services = socialcost::ServiceCostConfig::defaults();
  struct ServiceRow {
    const char* label;
    socialcost::ServiceCost cost;
    double printed;
  };
  const ServiceRow service_rows[] = {
      {"lawyer", services.lawyer, 444.65},
      {"doctor", services.doctor_visit, 86.38},
      {"therapy", services.therapy_session, 86.38},
      {"medication", services.medication, 53.96},
  };
  for (const auto& row : service_rows) {
    const double adjusted = socialcost::adjust_inflation(
        row.cost.nominal, row.cost.source_year, cpi);
    const double gap = std::abs(adjusted - row.printed);
    check.track_max(worst, gap);
    check.require(gap <= 0.01, fmt("service %s: %.4f vs %.2f", row.label,
                                   adjusted, row.printed));
  }
  return check.done(
      fmt("6 wages + 4 service costs, gap <= %.4f (tol 0.01)", worst));
}

// ---------------------------------------------------------------------------
// 3. Lower bounds: delta * window * per-victim cost against the printed
//    dollar figures, within 0.1%.

Outcome criterion_lower_bounds() {
  Checker check;
  struct Case {
    double delta;
    int window;
    double cost;
    double printed;
  };
  const Case cases[] = {
      {88956.0, 6, 1110.31, 592.7e6},
      {59714.0, 6, 853.41, 305.8e6},
      {179889.0, 6, 244.40, 263.8e6},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const double bound = eventstudy::lower_bound_cost(c.delta, c.window, c.cost);
    const double gap = rel_gap(bound, c.printed);
    check.track_max(worst, gap);
    check.require(gap <= 0.001,
                  fmt("(%.0f, %d, %.2f): %.0f vs printed %.0f (gap %.3f%%)",
                      c.delta, c.window, c.cost, bound, c.printed,
                      100.0 * gap));
  }
  return check.done(fmt("3 bounds, gap <= %.4f%% (tol 0.1%%)", 100.0 * worst));
}

// ---------------------------------------------------------------------------
// 4. Upper bounds: printed conversion-fit coefficients, alpha = 0.8, lag-2
//    start, per-victim costs interpolated from the printed cost table.
//    Victims within 10%, dollars within 15%, under one second.

Outcome criterion_upper_bounds() {
  const auto t0 = Clock::now();
  Checker check;

  projection::ConversionFit fit;
  fit.a = 1.41e-4;
  fit.b = -5.15e-2;
  fit.c = 11.49;
  const double alpha = 0.8;
  const auto printed = io::cost_rows_from_json(slurp(data_path("costs.json")));
  const MonthlySeries S = socialcost::interpolate_social_cost(printed);

  struct Case {
    const char* label;
    MonthIndex t;
    double records;
    double printed_victims;
    double printed_dollars;
  };
  const Case cases[] = {
      {"2009-01", 12, 130e6, 171.8e6, 179.1e9},
      {"2013-12", 71, 40e6, 5.49e6, 4.06e9},
      {"2017-09", 116, 147e6, 6.95e6, 1.72e9},
  };
  double worst_victims = 0.0;
  double worst_dollars = 0.0;
  for (const auto& c : cases) {
    const double victims = projection::project_victims(c.records, c.t, alpha, fit);
    const double dollars =
        projection::upper_bound_cost(c.records, c.t, alpha, fit, S);
    const double victims_gap = rel_gap(victims, c.printed_victims);
    const double dollars_gap = rel_gap(dollars, c.printed_dollars);
    check.track_max(worst_victims, victims_gap);
    check.track_max(worst_dollars, dollars_gap);
    check.require(victims_gap <= 0.10,
                  fmt("%s victims: %.3e vs printed %.3e (gap %.1f%%)",
                      c.label, victims, c.printed_victims,
                      100.0 * victims_gap));
    check.require(dollars_gap <= 0.15,
                  fmt("%s dollars: %.3e vs printed %.3e (gap %.1f%%)",
                      c.label, dollars, c.printed_dollars,
                      100.0 * dollars_gap));
  }
  const double elapsed = ms_since(t0);
  check.require(elapsed < 1000.0, fmt("took %.0f ms", elapsed));
  return check.done(fmt(
      "3 cases, victim gap <= %.2f%% (tol 10%%), dollar gap <= %.2f%% "
      "(tol 15%%), %.1f ms",
      100.0 * worst_victims, 100.0 * worst_dollars, elapsed));
}

// ---------------------------------------------------------------------------
// 5. Wilcoxon oracle: 200 random paired samples, n <= 12; the exact p must
//    match enumeration over all 2^n sign assignments to 1e-12.

double brute_force_p(const std::vector<double>& pre,
                     const std::vector<double>& post) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const double d = post[i] - pre[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  // doubled midranks stay integral even through ties
  std::vector<std::int64_t> rank2(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t less = 0;
    std::int64_t equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ai = std::abs(diffs[i]);
      const double aj = std::abs(diffs[j]);
      if (aj < ai) ++less;
      if (aj == ai) ++equal;
    }
    rank2[i] = 2 * less + equal + 1;
  }
  std::int64_t observed2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) observed2 += rank2[i];
  }
  std::uint64_t hits = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::int64_t w2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) w2 += rank2[i];
    }
    if (w2 >= observed2) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

Outcome criterion_wilcoxon_oracle() {
  Checker check;
  std::mt19937 rng(481516u);
  std::uniform_int_distribution<int> size_dist(2, 12);
  std::uniform_int_distribution<int> value_dist(0, 6);

  double worst = 0.0;
  int trials = 0;
  while (trials < 200) {
    const int n = size_dist(rng);
    std::vector<double> pre(n), post(n);
    for (int i = 0; i < n; ++i) {
      pre[i] = 0.5 * value_dist(rng);
      post[i] = 0.5 * value_dist(rng);
    }
    bool all_zero = true;
    for (int i = 0; i < n; ++i) all_zero = all_zero && pre[i] == post[i];
    if (all_zero) continue;
    ++trials;

    const auto result = stats::wilcoxon_signed_rank(pre, post);
    check.require(result.exact, fmt("trial %d: not exact at n=%d", trials, n));
    const double oracle = brute_force_p(pre, post);
    const double gap = std::abs(result.p_value - oracle);
    check.track_max(worst, gap);
    check.require(gap <= 1e-12,
                  fmt("trial %d (n=%d): p=%.17g oracle %.17g", trials, n,
                      result.p_value, oracle));
  }
  return check.done(fmt("200 samples, |p - oracle| <= %.2e (tol 1e-12)", worst));
}

// ---------------------------------------------------------------------------
// 6. Planted-effect recovery: a +500 step injected two months after each
//    synthetic mega breach must light up lag 2 with p < 0.05 and recover
//    the step size within 5%; the placebo sweep on the same series must
//    stay above 0.05 at every lag.

Outcome criterion_planted_effect() {
  Checker check;
  const int kLag = 2;
  const double kStep = 500.0;
  const std::vector<MonthIndex> mega_months{25, 50, 75, 100, 125, 150};
  const std::vector<MonthIndex> quiet_months{37, 62, 87, 112, 137};

  std::mt19937 rng(2021u);
  std::uniform_real_distribution<double> noise(0.0, 4.0);
  std::vector<double> values(kStudyMonthCount);
  for (MonthIndex t = 0; t < static_cast<MonthIndex>(values.size()); ++t) {
    double level = 1000.0 + noise(rng);
    for (const MonthIndex m : mega_months) {
      if (t >= m + kLag) level += kStep;
    }
    values[t] = level;
  }
  const MonthlySeries victims(0, std::move(values));

  std::vector<ingest::BreachEvent> events;
  for (const MonthIndex m : mega_months) {
    ingest::BreachEvent e;
    e.org_name = "mega " + format_month(m);
    e.month = m;
    e.records = 2e7;
    e.basis = ingest::RecordBasis::kDisclosed;
    events.push_back(e);
  }
  for (const MonthIndex m : quiet_months) {
    ingest::BreachEvent e;
    e.org_name = "minor " + format_month(m);
    e.month = m;
    e.records = 1e5;
    e.basis = ingest::RecordBasis::kDisclosed;
    events.push_back(e);
  }

  PipelineConfig config;
  config.mega_threshold = 1e7;
  config.consolidation_gap = 3;
  config.pre_window = 6;
  config.post_window = 6;
  config.lag_min = 0;
  config.lag_max = 8;

  const auto clusters = eventstudy::find_mega_events(
      events, config.mega_threshold, config.consolidation_gap);
  check.require(clusters.size() == mega_months.size(),
                fmt("%zu mega clusters, expected %zu", clusters.size(),
                    mega_months.size()));
  const auto sweep =
      eventstudy::lag_sweep(clusters, victims, config.lag_min, config.lag_max,
                            config.pre_window, config.post_window);

  double planted_p = 1.0;
  double planted_delta = 0.0;
  for (const auto& result : sweep) {
    if (result.lag != kLag) continue;
    check.require(result.diagnostic.empty(),
                  "lag 2 diagnostic: " + result.diagnostic);
    if (result.p_value) planted_p = *result.p_value;
    planted_delta = result.mean_delta;
    check.require(result.p_value.has_value() && *result.p_value < 0.05,
                  fmt("lag 2 p = %.4f, wanted < 0.05", planted_p));
    check.require(std::abs(result.mean_delta - kStep) <= 0.05 * kStep,
                  fmt("lag 2 mean delta %.2f, wanted within 5%% of %.0f",
                      result.mean_delta, kStep));
  }

  const auto placebo = eventstudy::placebo_sweep(events, victims, config);
  check.require(placebo.size() == 9,
                fmt("placebo sweep has %zu lags, expected 9", placebo.size()));
  double placebo_min_p = 1.0;
  for (const auto& result : placebo) {
    check.require(result.diagnostic.empty(),
                  fmt("placebo lag %d diagnostic: %s", result.lag,
                      result.diagnostic.c_str()));
    if (!result.p_value) continue;
    placebo_min_p = std::min(placebo_min_p, *result.p_value);
    check.require(*result.p_value > 0.05,
                  fmt("placebo lag %d p = %.4f, wanted > 0.05", result.lag,
                      *result.p_value));
  }
  return check.done(fmt(
      "lag-2 p = %.4f, mean delta %.1f (planted %.0f), placebo min p = %.4f",
      planted_p, planted_delta, kStep, placebo_min_p));
}

// ---------------------------------------------------------------------------
// 7. Discounted pool: the recursion must match the closed-form geometric
//    sum to 1e-9 relative on a random full-length series, and an impulse
//    must decay exactly geometrically.

Outcome criterion_discounted_pool() {
  Checker check;
  std::mt19937 rng(7351u);
  std::uniform_real_distribution<double> records(0.0, 1e6);
  std::vector<double> exposure(kStudyMonthCount);
  for (auto& r : exposure) r = records(rng);
  const MonthlySeries input(0, exposure);

  double worst = 0.0;
  for (const double alpha : {0.8, 0.35}) {
    const MonthlySeries pool = series::discounted_pool(input, alpha);
    for (MonthIndex t = 0; t <= kLastStudyMonth; ++t) {
      double closed = 0.0;
      for (MonthIndex k = 0; k <= t; ++k) {
        closed += std::pow(alpha, t - k) * exposure[k];
      }
      const double gap = std::abs(pool.value_at(t) - closed) /
                         std::max(1.0, std::abs(closed));
      check.track_max(worst, gap);
      check.require(gap <= 1e-9,
                    fmt("alpha %.2f month %d: pool %.9e vs closed %.9e",
                        alpha, t, pool.value_at(t), closed));
    }
  }

  std::vector<double> impulse(kStudyMonthCount, 0.0);
  impulse[0] = 100.0;
  const MonthlySeries pool = series::discounted_pool(MonthlySeries(0, impulse), 0.8);
  bool geometric = pool.value_at(0) == 100.0;
  for (MonthIndex t = 1; t <= kLastStudyMonth; ++t) {
    geometric = geometric && pool.value_at(t) == 0.8 * pool.value_at(t - 1);
  }
  check.require(geometric, "impulse response is not exactly geometric");
  return check.done(
      fmt("closed-form gap <= %.2e (tol 1e-9), impulse exactly geometric",
          worst));
}

// ---------------------------------------------------------------------------
// 8. Saturation: mu non-decreasing and below 1, new exposure non-negative
//    and capped by theta * r_t * gamma0, and the final mu independent of
//    the order the records arrive in (constant population).

Outcome criterion_saturation() {
  Checker check;
  std::mt19937 rng(90210u);
  std::uniform_real_distribution<double> records(0.0, 5e7);
  std::vector<double> exposure(kStudyMonthCount);
  for (auto& r : exposure) r = records(rng);

  projection::SaturationParams params;
  const double population = 3.2e8;
  const MonthlySeries pop = MonthlySeries::constant(0, kStudyMonthCount, population);
  const auto run =
      projection::run_saturation(MonthlySeries(0, exposure), pop, params);

  double mu_prev = 0.0;
  for (MonthIndex t = 0; t <= kLastStudyMonth; ++t) {
    const double mu = run.saturation.value_at(t);
    const double c = run.newly_exposed.value_at(t);
    check.require(mu >= mu_prev, fmt("mu decreases at month %d", t));
    check.require(mu < 1.0, fmt("mu reaches 1 at month %d", t));
    check.require(c >= 0.0, fmt("negative new exposure at month %d", t));
    const double cap = params.theta * exposure[t] * params.gamma0;
    check.require(c <= cap * (1.0 + 1e-12) + 1e-9,
                  fmt("month %d: c = %.6f exceeds cap %.6f", t, c, cap));
    mu_prev = mu;
  }

  std::vector<double> shuffled = exposure;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto rerun =
      projection::run_saturation(MonthlySeries(0, shuffled), pop, params);
  const double final_a = run.saturation.value_at(kLastStudyMonth);
  const double final_b = rerun.saturation.value_at(kLastStudyMonth);
  const double order_gap = rel_gap(final_b, final_a);
  check.require(order_gap <= 1e-9,
                fmt("final mu order-dependent: %.12f vs %.12f", final_a,
                    final_b));
  return check.done(fmt(
      "168 months clean, final mu %.9f, order gap %.2e (tol 1e-9)", final_a,
      order_gap));
}

// ---------------------------------------------------------------------------
// 9. Fit round-trip to 1e-9, and the victim projection with unit prices
//    must equal the dollar sum to 1e-12 relative.

Outcome criterion_fit_roundtrip() {
  Checker check;
  struct Coefs {
    double a, b, c;
  };
  const Coefs planted[] = {{1.41e-4, -5.15e-2, 11.49}, {-2.3e-5, 1.7e-2, 2.0}};
  double worst_coef = 0.0;
  for (const auto& p : planted) {
    std::vector<double> values(kStudyMonthCount);
    for (MonthIndex t = 0; t < static_cast<MonthIndex>(values.size()); ++t) {
      const double x = static_cast<double>(t);
      values[t] = std::exp(p.a * x * x + p.b * x + p.c);
    }
    const auto fit = projection::fit_log_quadratic(MonthlySeries(0, values));
    const double gaps[] = {
        std::abs(fit.a - p.a) / std::max(1.0, std::abs(p.a)),
        std::abs(fit.b - p.b) / std::max(1.0, std::abs(p.b)),
        std::abs(fit.c - p.c) / std::max(1.0, std::abs(p.c)),
    };
    for (const double gap : gaps) {
      check.track_max(worst_coef, gap);
      check.require(gap <= 1e-9,
                    fmt("fit drifted: (%.3e, %.3e, %.3e) vs planted "
                        "(%.3e, %.3e, %.3e)",
                        fit.a, fit.b, fit.c, p.a, p.b, p.c));
    }
  }

  projection::ConversionFit fit;
  fit.a = 1.41e-4;
  fit.b = -5.15e-2;
  fit.c = 11.49;
  const MonthlySeries unit = MonthlySeries::constant(0, kStudyMonthCount, 1.0);
  double worst_sum = 0.0;
  for (const MonthIndex t : {0, 12, 71, 116, 160, 165}) {
    const double victims = projection::project_victims(4e7, t, 0.8, fit);
    const double priced = projection::upper_bound_cost(4e7, t, 0.8, fit, unit);
    const double gap = std::abs(priced - victims) /
                       std::max(1.0, std::abs(victims));
    check.track_max(worst_sum, gap);
    check.require(gap <= 1e-12,
                  fmt("month %d: unit-priced sum %.12e vs victims %.12e", t,
                      priced, victims));
  }
  return check.done(fmt(
      "coefficient gap <= %.2e (tol 1e-9), unit-price gap <= %.2e (tol 1e-12)",
      worst_coef, worst_sum));
}

// ---------------------------------------------------------------------------
// 10. Imputation conservation: every year's imputed records sum to the
//     annual baseline volume, and disclosed counts pass through bit-exact.

Outcome criterion_imputation() {
  Checker check;
  using ingest::BreachCategory;
  using ingest::BreachEvent;
  using ingest::RecordBasis;

  std::mt19937 rng(60611u);
  std::uniform_int_distribution<int> month_in_year(0, 11);
  std::uniform_real_distribution<double> count_dist(100.0, 500000.0);
  std::uniform_int_distribution<int> category_pick(0, 2);
  std::uniform_int_distribution<int> per_year(1, 5);
  const BreachCategory categories[] = {BreachCategory::kPaymentCard,
                                       BreachCategory::kInsider,
                                       BreachCategory::kExternalCyber};

  std::vector<BreachEvent> events;
  int serial = 0;
  auto add = [&](int year, std::optional<double> records,
                 BreachCategory category) {
    BreachEvent e;
    e.org_name = "org " + std::to_string(++serial);
    e.month = month_index(year, 1 + month_in_year(rng));
    e.records = records;
    e.category = category;
    e.basis = records ? RecordBasis::kDisclosed : RecordBasis::kUndisclosed;
    events.push_back(e);
  };
  for (int year = 2008; year <= 2017; ++year) {
    const int disclosed = per_year(rng) + 1;
    for (int i = 0; i < disclosed; ++i) {
      add(year, count_dist(rng), categories[category_pick(rng)]);
    }
    const int undisclosed = per_year(rng) - 1;
    for (int i = 0; i < undisclosed; ++i) {
      add(year, std::nullopt, categories[category_pick(rng)]);
    }
  }
  // make sure every category used by an undisclosed event has a median
  for (const auto category : categories) add(2012, 1234.5, category);

  const auto weights = augment::category_median_weights(events);
  const auto counts = augment::undisclosed_counts(events);
  const auto baseline = augment::annual_baseline(counts, weights, 10);
  const auto imputed = augment::impute_undisclosed(events, baseline);

  check.require(imputed.size() == events.size(), "event count changed");
  std::map<int, double> imputed_by_year;
  std::map<int, int> undisclosed_by_year;
  double worst = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& before = events[i];
    const auto& after = imputed[i];
    if (before.basis == RecordBasis::kDisclosed) {
      check.require(after.basis == RecordBasis::kDisclosed &&
                        after.records.has_value() &&
                        *after.records == *before.records,
                    "disclosed count disturbed for " + before.org_name);
    } else {
      ++undisclosed_by_year[year_of(before.month)];
      check.require(after.basis == RecordBasis::kImputed &&
                        after.records.has_value(),
                    "undisclosed event left unfilled: " + before.org_name);
      if (after.records) {
        imputed_by_year[year_of(after.month)] += *after.records;
      }
    }
  }
  for (const auto& [year, total] : imputed_by_year) {
    const double gap = rel_gap(total, baseline.annual_volume);
    check.track_max(worst, gap);
    check.require(gap <= 1e-6,
                  fmt("%d: imputed sum %.3f vs n_u %.3f (gap %.2e)", year,
                      total, baseline.annual_volume, gap));
  }
  check.require(!imputed_by_year.empty(), "no undisclosed events generated");
  return check.done(fmt(
      "%zu years conserve n_u = %.1f, gap <= %.2e (tol 1e-6), disclosed "
      "counts bit-exact",
      imputed_by_year.size(), baseline.annual_volume, worst));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "cost table reproduction", criterion_cost_table},
      {2, "inflation and wage arithmetic", criterion_inflation},
      {3, "lower bounds", criterion_lower_bounds},
      {4, "upper bounds", criterion_upper_bounds},
      {5, "wilcoxon exact oracle", criterion_wilcoxon_oracle},
      {6, "planted-effect recovery", criterion_planted_effect},
      {7, "discounted pool closed form", criterion_discounted_pool},
      {8, "saturation properties", criterion_saturation},
      {9, "fit round-trip and unit-price identity", criterion_fit_roundtrip},
      {10, "imputation conservation", criterion_imputation},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.label, outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of 10 acceptance criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 acceptance criteria hold\n");
  return 0;
}
