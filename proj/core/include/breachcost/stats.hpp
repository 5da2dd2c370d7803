#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace breachcost::stats {

// Median with the usual midpoint convention for even counts. Takes a copy
// because it partially sorts. Throws std::invalid_argument when empty.
double median(std::vector<double> values);

double mean(std::span<const double> values);

}  // namespace breachcost::stats
