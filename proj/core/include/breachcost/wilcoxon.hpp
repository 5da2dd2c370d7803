#pragma once

#include <cstddef>
#include <span>

namespace breachcost::stats {

struct WilcoxonResult {
  double w_plus = 0.0;   // sum of ranks carried by positive differences
  double p_value = 1.0;  // one-sided, P(W >= w_plus) under the null
  std::size_t n_used = 0;  // pairs surviving the zero-difference drop
  bool exact = false;      // exact enumeration vs normal approximation
};

// Paired one-sided Wilcoxon signed-rank test of "post exceeds pre".
//
// Differences d_i = post_i - pre_i. Zero differences are dropped; ties in
// |d| receive midranks. With n non-zero differences remaining:
//
//   n <= exact_limit   exact null distribution. Midranks are half-integers
//                      at worst, so doubled ranks are integers and a subset
//                      sum count over them gives P(W >= w_plus) without any
//                      floating point in the tail count.
//   n > exact_limit    normal approximation with continuity correction and
//                      the standard tie correction
//                        Var W = n(n+1)(2n+1)/24 - sum(t^3 - t)/48.
//
// Throws std::invalid_argument when the spans differ in length or are
// empty, and std::domain_error ("degenerate sample") when every difference
// is zero.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> pre,
                                    std::span<const double> post,
                                    std::size_t exact_limit = 25);

}  // namespace breachcost::stats
