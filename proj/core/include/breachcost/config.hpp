#pragma once

#include <iosfwd>
#include <string>

namespace breachcost {

// Tunable pipeline parameters with their conventional defaults. Loaded from
// a "key = value" config file; unknown keys are rejected so typos surface
// immediately.
struct PipelineConfig {
  double alpha = 0.8;              // monthly exposure carry-over
  double theta = 1.75;             // identities per record
  double gamma0 = 0.8;             // reachable share of exposed identities
  double market_scale = 1.0;       // Y, scales the addressable population
  double mega_threshold = 1e7;     // records that make a breach "mega"
  int pre_window = 6;              // months of baseline before an event
  int post_window = 6;             // months aggregated after the lag
  int lag_min = 0;                 // lag sweep, inclusive bounds
  int lag_max = 8;
  int consolidation_gap = 3;       // months separating distinct mega events
  int baseline_years = 14;         // T, years behind the annual report volume

  void validate() const;  // std::domain_error on out-of-range values
};

PipelineConfig parse_config(std::istream& in,
                            const std::string& origin = "<config>");
PipelineConfig load_config(const std::string& path);

}  // namespace breachcost
