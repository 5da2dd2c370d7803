#pragma once

#include <optional>
#include <string>
#include <vector>

#include "breachcost/config.hpp"

namespace breachcost::cli {

struct GlobalArgs {
  std::string out_dir = ".";
  std::optional<std::string> config_path;
  bool plot = false;
  std::optional<long> seed;  // accepted for interface stability; unused
  PipelineConfig config;     // resolved from defaults + --config
};

struct IngestArgs {
  std::string breaches;
  std::optional<std::string> hhs;
  std::optional<std::string> filings;
  int match_gap = 2;
};

struct AugmentArgs {
  std::string events;
  bool with_intercept = false;
};

struct CostTableArgs {
  std::string survey;
  std::string wages;
  std::optional<std::string> cpi;       // defaults ship in the library
  std::optional<std::string> services;  // likewise
  bool prose_services = false;
  std::string denominator = "weighted";
  int anchor_month = 6;
};

struct InterpolateArgs {
  std::string anchors;
  std::optional<std::string> from;
  std::optional<std::string> to;
};

struct ConversionArgs {
  std::string events;
  std::string victims;
  int window = 6;
  std::optional<double> alpha;
};

struct EventStudyArgs {
  std::string events;
  std::string victims;
  bool placebo = false;
  std::optional<double> threshold;
  std::optional<int> gap;
  std::optional<int> pre;
  std::optional<int> post;
  std::optional<std::string> lags;  // "lo..hi"
};

struct BoundsArgs {
  std::vector<std::string> breaches;  // "YYYY-MM:RECORDS"
  std::string fit;
  std::string costs;
  std::optional<std::string> deltas;
  std::optional<std::string> study;
  std::optional<int> lag;  // lag picked out of --study
  std::optional<std::string> settlements;
  std::optional<double> alpha;
  std::optional<int> window;
};

struct SaturateArgs {
  std::string records;
  std::string population;
  std::optional<double> theta;
  std::optional<double> gamma0;
  std::optional<double> market_scale;
};

struct ReportArgs {
  std::string survey;
  std::string wages;
  std::string fit;
  std::string cases;  // {"YYYY-MM": records}
  std::optional<std::string> cpi;
  std::optional<std::string> services;
  std::optional<std::string> deltas;
  std::optional<std::string> settlements;
};

int run_ingest(const GlobalArgs& global, const IngestArgs& args);
int run_augment(const GlobalArgs& global, const AugmentArgs& args);
int run_cost_table(const GlobalArgs& global, const CostTableArgs& args);
int run_interpolate(const GlobalArgs& global, const InterpolateArgs& args);
int run_conversion(const GlobalArgs& global, const ConversionArgs& args);
int run_event_study(const GlobalArgs& global, const EventStudyArgs& args);
int run_bounds(const GlobalArgs& global, const BoundsArgs& args);
int run_saturate(const GlobalArgs& global, const SaturateArgs& args);
int run_report(const GlobalArgs& global, const ReportArgs& args);

}  // namespace breachcost::cli
