#include "breachcost/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace breachcost::stats {

namespace {

struct RankedDifferences {
  std::vector<long long> doubled_ranks;  // 2 * midrank, integer by design
  long long doubled_w_plus = 0;
  double tie_correction = 0.0;  // sum over tie groups of (t^3 - t)
};

RankedDifferences rank_differences(const std::vector<double>& diffs) {
  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(diffs[a]) < std::abs(diffs[b]);
  });

  RankedDifferences out;
  out.doubled_ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n &&
           std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) {
      ++j;
    }
    // Positions i..j (0-based) share ranks i+1..j+1; the midrank doubles to
    // an exact integer (i+1) + (j+1).
    const long long doubled = static_cast<long long>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) {
      out.doubled_ranks[order[k]] = doubled;
      if (diffs[order[k]] > 0.0) out.doubled_w_plus += doubled;
    }
    const double t = static_cast<double>(j - i + 1);
    out.tie_correction += t * t * t - t;
    i = j + 1;
  }
  return out;
}

// Counts sign assignments whose doubled rank sum reaches at least target.
// Classic subset-sum table over the doubled ranks; counts fit comfortably
// in 64 bits for n <= 61.
double exact_upper_tail(const std::vector<long long>& doubled_ranks,
                        long long target) {
  long long total = 0;
  for (long long r : doubled_ranks) total += r;
  if (target <= 0) return 1.0;

  std::vector<std::uint64_t> count(static_cast<std::size_t>(total) + 1, 0);
  count[0] = 1;
  long long reached = 0;
  for (long long r : doubled_ranks) {
    reached += r;
    for (long long s = reached; s >= r; --s) {
      count[static_cast<std::size_t>(s)] +=
          count[static_cast<std::size_t>(s - r)];
    }
  }

  std::uint64_t tail = 0;
  for (long long s = target; s <= total; ++s) {
    tail += count[static_cast<std::size_t>(s)];
  }
  return static_cast<double>(tail) /
         std::ldexp(1.0, static_cast<int>(doubled_ranks.size()));
}

double normal_upper_tail(double w_plus, std::size_t n,
                         double tie_correction) {
  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double variance =
      nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
  if (variance <= 0.0) return w_plus > mean ? 0.0 : 1.0;
  const double z = (w_plus - mean - 0.5) / std::sqrt(variance);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> pre,
                                    std::span<const double> post,
                                    std::size_t exact_limit) {
  if (pre.size() != post.size()) {
    throw std::invalid_argument("wilcoxon: pre and post differ in length");
  }
  if (pre.empty()) {
    throw std::invalid_argument("wilcoxon: empty sample");
  }

  std::vector<double> diffs;
  diffs.reserve(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const double d = post[i] - pre[i];
    if (!std::isfinite(d)) {
      throw std::invalid_argument("wilcoxon: non-finite difference");
    }
    if (d != 0.0) diffs.push_back(d);
  }

  if (diffs.empty()) {
    throw std::domain_error("degenerate sample: all differences are zero");
  }

  WilcoxonResult result;
  result.n_used = diffs.size();

  const RankedDifferences ranked = rank_differences(diffs);
  result.w_plus = static_cast<double>(ranked.doubled_w_plus) / 2.0;

  if (diffs.size() <= exact_limit) {
    result.exact = true;
    result.p_value =
        exact_upper_tail(ranked.doubled_ranks, ranked.doubled_w_plus);
  } else {
    result.exact = false;
    result.p_value =
        normal_upper_tail(result.w_plus, diffs.size(), ranked.tie_correction);
  }
  return result;
}

}  // namespace breachcost::stats
