#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "breachcost/augment.hpp"
#include "breachcost/eventstudy.hpp"
#include "breachcost/ingest.hpp"
#include "breachcost/monthly_series.hpp"
#include "breachcost/projection.hpp"
#include "breachcost/socialcost.hpp"

namespace breachcost::io {

// Audit trail of the augmentation stage: regression, medians, baseline and
// how many events each fill path touched.
struct AugmentAudit {
  std::optional<augment::OlsSlope> slope;
  augment::CategoryWeights category_weights;
  augment::CategoryCounts category_counts;
  double annual_volume = 0.0;
  int baseline_years = 0;
  std::size_t estimated_events = 0;
  std::size_t imputed_events = 0;
};

struct MergeStats {
  std::size_t additions = 0;
  std::size_t pending = 0;
  std::size_t filtered_pairs = 0;
};

// The inter-stage interchange document: events plus whatever calibration
// and audit data the producing stage had.
struct EventsDocument {
  std::vector<ingest::BreachEvent> events;
  std::vector<ingest::MatchedPair> pairs;
  std::optional<MergeStats> merge;
  std::optional<AugmentAudit> audit;
};

std::string to_json(const EventsDocument& doc);
EventsDocument events_from_json(const std::string& text);

struct StudyDocument {
  double threshold = 0.0;
  int gap = 0;
  int pre_window = 0;
  int post_window = 0;
  bool placebo = false;
  std::vector<eventstudy::MegaEvent> events;
  std::vector<eventstudy::EventStudyResult> results;
};

std::string to_json(const StudyDocument& doc);
StudyDocument study_from_json(const std::string& text);

std::string to_json(const projection::ConversionFit& fit);
projection::ConversionFit fit_from_json(const std::string& text);

std::string cost_rows_to_json(const std::vector<socialcost::CostTableRow>& rows);
std::vector<socialcost::CostTableRow> cost_rows_from_json(const std::string& text);

struct BreachBound {
  MonthIndex month = 0;
  double records = 0.0;
  double projected_victims = 0.0;
  double upper_bound = 0.0;
  std::optional<double> delta;            // victims/month behind the lower bound
  std::optional<double> per_victim_cost;  // cost applied to the lower bound
  std::optional<int> cost_year;
  std::optional<double> lower_bound;
  std::optional<double> settlement;
  std::optional<double> ratio_lower;  // lower_bound / settlement
  std::optional<double> ratio_upper;  // upper_bound / settlement
};

struct BoundsDocument {
  double alpha = 0.0;
  int window_months = 0;
  std::vector<BreachBound> results;
};

std::string to_json(const BoundsDocument& doc);
BoundsDocument bounds_from_json(const std::string& text);

// {"YYYY-MM": value, ...} documents (deltas, settlements).
std::string month_map_to_json(const std::map<MonthIndex, double>& values);
std::map<MonthIndex, double> month_map_from_json(const std::string& text);

// Series CSV: header month,value,flag; missing months keep an empty value.
void write_series_csv(std::ostream& out, const MonthlySeries& series);
MonthlySeries read_series_csv(std::istream& in);

void write_cost_table_csv(std::ostream& out,
                          const std::vector<socialcost::CostTableRow>& rows);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace breachcost::io
