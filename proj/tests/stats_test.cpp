#include "breachcost/stats.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace breachcost;

TEST_CASE("median of odd-length samples") {
  CHECK(stats::median({5.0}) == 5.0);
  CHECK(stats::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(stats::median({9.0, -4.0, 0.0, 7.0, 2.0}) == 2.0);
}

TEST_CASE("median of even-length samples averages the middle pair") {
  CHECK(stats::median({1.0, 3.0}) == 2.0);
  CHECK(stats::median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(stats::median({10.0, 10.0, 10.0, 20.0}) == 10.0);
}

TEST_CASE("mean") {
  const std::vector<double> pair{2.0, 4.0};
  CHECK(stats::mean(pair) == 3.0);
  const std::vector<double> one{1.0};
  CHECK(stats::mean(one) == 1.0);
}

TEST_CASE("empty samples are rejected") {
  CHECK_THROWS_AS(stats::median({}), std::invalid_argument);
  CHECK_THROWS_AS(stats::mean(std::vector<double>{}), std::invalid_argument);
}
