#include "breachcost/series_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace breachcost::series {

MonthlySeries log_linear_interpolate(const std::vector<AnchorPoint>& anchors,
                                     MonthIndex t_start, MonthIndex t_end) {
  if (anchors.size() < 2) {
    throw std::invalid_argument("need at least 2 anchors, got " +
                                std::to_string(anchors.size()));
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i].value <= 0.0 || !std::isfinite(anchors[i].value)) {
      throw std::domain_error("anchor at " + format_month(anchors[i].t) +
                              " must be positive");
    }
    if (i > 0 && anchors[i].t <= anchors[i - 1].t) {
      throw std::invalid_argument("anchor months must be strictly increasing");
    }
  }
  if (t_start > t_end) {
    throw std::invalid_argument("empty interpolation range");
  }
  if (!in_study_window(t_start) || !in_study_window(t_end)) {
    throw std::domain_error("interpolation range leaves the study calendar");
  }

  const std::size_t length = static_cast<std::size_t>(t_end - t_start) + 1;
  std::vector<double> values(length, 0.0);
  std::vector<SeriesFlag> flags(length, SeriesFlag::kInterpolated);

  std::size_t segment = 0;  // anchors[segment] is the left end in use
  for (std::size_t i = 0; i < length; ++i) {
    const MonthIndex t = t_start + static_cast<MonthIndex>(i);
    while (segment + 2 < anchors.size() && t >= anchors[segment + 1].t) {
      ++segment;
    }
    const AnchorPoint& lo = anchors[segment];
    const AnchorPoint& hi = anchors[segment + 1];
    if (t <= anchors.front().t) {
      values[i] = anchors.front().value;
      if (t == anchors.front().t) flags[i] = SeriesFlag::kObserved;
    } else if (t >= anchors.back().t) {
      values[i] = anchors.back().value;
      if (t == anchors.back().t) flags[i] = SeriesFlag::kObserved;
    } else if (t == lo.t) {
      values[i] = lo.value;
      flags[i] = SeriesFlag::kObserved;
    } else if (t == hi.t) {
      values[i] = hi.value;
      flags[i] = SeriesFlag::kObserved;
    } else {
      const double frac = static_cast<double>(t - lo.t) /
                          static_cast<double>(hi.t - lo.t);
      values[i] = std::exp(std::log(lo.value) +
                           frac * (std::log(hi.value) - std::log(lo.value)));
    }
  }
  return MonthlySeries(t_start, std::move(values), std::move(flags));
}

MonthlySeries discounted_pool(const MonthlySeries& exposure, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
  std::vector<double> values(exposure.size(), 0.0);
  std::vector<SeriesFlag> flags(exposure.size(), SeriesFlag::kObserved);
  double pool = 0.0;
  SeriesFlag carried = SeriesFlag::kObserved;
  for (std::size_t i = 0; i < exposure.size(); ++i) {
    pool = alpha * pool + exposure.value(i);
    carried = worst_flag(carried, exposure.flag(i));
    values[i] = pool;
    flags[i] = carried;
  }
  return MonthlySeries(exposure.start(), std::move(values), std::move(flags));
}

MonthlySeries conversion_rate(const MonthlySeries& victims,
                              const MonthlySeries& pool) {
  if (victims.start() != pool.start() || victims.size() != pool.size()) {
    throw std::invalid_argument(
        "victims and pool series are not aligned");
  }
  MonthlySeries out = MonthlySeries::constant(victims.start(), victims.size(),
                                              0.0, SeriesFlag::kMissing);
  for (std::size_t i = 0; i < victims.size(); ++i) {
    if (!victims.defined(i) || !pool.defined(i)) continue;
    if (pool.value(i) == 0.0) continue;  // stays a gap
    out.set(i, victims.value(i) / pool.value(i) * 100000.0,
            worst_flag(victims.flag(i), pool.flag(i)));
  }
  return out;
}

MonthlySeries moving_average(const MonthlySeries& input, int window) {
  if (window < 1) {
    throw std::invalid_argument("window must be at least 1");
  }
  if (static_cast<std::size_t>(window) > input.size()) {
    throw std::invalid_argument("window exceeds series length");
  }
  MonthlySeries out = MonthlySeries::constant(input.start(), input.size(), 0.0,
                                              SeriesFlag::kMissing);
  for (std::size_t i = static_cast<std::size_t>(window) - 1; i < input.size();
       ++i) {
    double sum = 0.0;
    SeriesFlag flag = SeriesFlag::kObserved;
    bool defined = true;
    for (std::size_t k = i + 1 - static_cast<std::size_t>(window); k <= i;
         ++k) {
      if (!input.defined(k)) {
        defined = false;
        break;
      }
      sum += input.value(k);
      flag = worst_flag(flag, input.flag(k));
    }
    if (defined) {
      out.set(i, sum / static_cast<double>(window), flag);
    }
  }
  return out;
}

}  // namespace breachcost::series
