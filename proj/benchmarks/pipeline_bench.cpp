#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "breachcost/calendar.hpp"
#include "breachcost/monthly_series.hpp"
#include "breachcost/projection.hpp"
#include "breachcost/series_ops.hpp"
#include "breachcost/socialcost.hpp"
#include "breachcost/wilcoxon.hpp"

using namespace breachcost;

namespace {

std::vector<double> random_values(std::size_t n, double lo, double hi,
                                  unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> values(n);
  for (auto& v : values) v = dist(rng);
  return values;
}

void BM_WilcoxonExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pre = random_values(n, 0.0, 100.0, 11u);
  const auto post = random_values(n, 0.0, 100.0, 12u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(pre, post, 25));
  }
}
BENCHMARK(BM_WilcoxonExact)->Arg(8)->Arg(16)->Arg(25);

void BM_WilcoxonNormalApprox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pre = random_values(n, 0.0, 100.0, 13u);
  const auto post = random_values(n, 0.0, 100.0, 14u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(pre, post, 25));
  }
}
BENCHMARK(BM_WilcoxonNormalApprox)->Arg(50)->Arg(500)->Arg(5000);

void BM_DiscountedPool(benchmark::State& state) {
  const MonthlySeries exposure(
      0, random_values(kStudyMonthCount, 0.0, 1e7, 15u));
  for (auto _ : state) {
    benchmark::DoNotOptimize(series::discounted_pool(exposure, 0.8));
  }
}
BENCHMARK(BM_DiscountedPool);

void BM_FitLogQuadratic(benchmark::State& state) {
  std::vector<double> values(kStudyMonthCount);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = static_cast<double>(i);
    values[i] = std::exp(1.41e-4 * t * t - 5.15e-2 * t + 11.49);
  }
  const MonthlySeries conversion(0, values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection::fit_log_quadratic(conversion));
  }
}
BENCHMARK(BM_FitLogQuadratic);

void BM_ProjectVictims(benchmark::State& state) {
  projection::ConversionFit fit;
  fit.a = 1.41e-4;
  fit.b = -5.15e-2;
  fit.c = 11.49;
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection::project_victims(1.3e8, 12, 0.8, fit));
  }
}
BENCHMARK(BM_ProjectVictims);

void BM_RunSaturation(benchmark::State& state) {
  const MonthlySeries exposure(
      0, random_values(kStudyMonthCount, 0.0, 5e7, 16u));
  const MonthlySeries population =
      MonthlySeries::constant(0, kStudyMonthCount, 3.2e8);
  projection::SaturationParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        projection::run_saturation(exposure, population, params));
  }
}
BENCHMARK(BM_RunSaturation);

void BM_InterpolateSocialCost(benchmark::State& state) {
  std::vector<socialcost::CostTableRow> rows(6);
  const int years[] = {2008, 2012, 2014, 2016, 2018, 2021};
  const double totals[] = {1110.31, 921.38, 853.41, 245.27, 244.40, 295.73};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].year = years[i];
    rows[i].total_per_victim = totals[i];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(socialcost::interpolate_social_cost(rows));
  }
}
BENCHMARK(BM_InterpolateSocialCost);

}  // namespace

BENCHMARK_MAIN();
