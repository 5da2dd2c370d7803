#pragma once

#include <vector>

#include "breachcost/monthly_series.hpp"

namespace breachcost::series {

struct AnchorPoint {
  MonthIndex t = 0;
  double value = 0.0;  // > 0, interpolation happens in log space
};

// Series whose log is piecewise linear through the anchors, emitted over
// [t_start, t_end]. Anchor months carry the anchor value exactly, flagged
// observed; every other month (including the flat stretches before the
// first and after the last anchor) is flagged interpolated.
MonthlySeries log_linear_interpolate(const std::vector<AnchorPoint>& anchors,
                                     MonthIndex t_start, MonthIndex t_end);

// D_t = alpha * D_{t-1} + M_t with D = 0 before the series starts, i.e.
// the geometric sum D_t = sum_k alpha^(t-k) M_k. A missing input month
// poisons the pool from that month onward.
MonthlySeries discounted_pool(const MonthlySeries& exposure, double alpha);

// C_t = victims_t / D_t * 100000. Months where D_t = 0 come out missing
// rather than infinite.
MonthlySeries conversion_rate(const MonthlySeries& victims,
                              const MonthlySeries& pool);

// Trailing mean of the last `window` months; the first window-1 months are
// gaps, as is any month whose window touches a gap.
MonthlySeries moving_average(const MonthlySeries& input, int window);

}  // namespace breachcost::series
