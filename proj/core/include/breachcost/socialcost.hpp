#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "breachcost/monthly_series.hpp"

namespace breachcost::socialcost {

// All adjusted figures are expressed in this year's currency.
inline constexpr int kCostBaseYear = 2021;

class CpiTable {
 public:
  void set(int year, double cpi);
  double at(int year) const;  // throws naming the missing year
  bool contains(int year) const;
  const std::map<int, double>& entries() const { return by_year_; }

  // Annual average CPI-U for the survey years, plus back-calculated
  // entries for the 2023/2024 service-cost source years.
  static CpiTable defaults();

 private:
  std::map<int, double> by_year_;
};

double adjust_inflation(double nominal, int from_year, const CpiTable& cpi);

struct WageTable {
  std::map<int, double> nominal_by_year;  // average private hourly wage
  double nominal_at(int year) const;      // throws naming the missing year
};

struct ServiceCost {
  double nominal = 0.0;
  int source_year = kCostBaseYear;
};

struct ServiceCostConfig {
  ServiceCost lawyer;
  ServiceCost doctor_visit;
  ServiceCost therapy_session;
  ServiceCost medication;

  // Unit costs whose inflation adjustment lands on 444.65 / 86.38 / 86.38
  // / 53.96 in base-year terms.
  static ServiceCostConfig defaults();
  // The alternate preset quoted in running text: 445 / 133 / 89 / 54,
  // already in base-year terms.
  static ServiceCostConfig prose_preset();

  void validate(const CpiTable& cpi) const;
};

struct SurveyWaveAggregate {
  int year = 0;
  double total_weighted_victims = 0.0;
  double avg_oop_nominal = 0.0;  // unrecovered out-of-pocket loss, nominal
  double avg_hours = 0.0;        // hours spent resolving, per victim
  double lawyer_count = 0.0;     // weighted victims who hired a lawyer
  double doctor_count = 0.0;
  double therapy_count = 0.0;
  double medication_count = 0.0;
  double unweighted_n = 0.0;     // raw respondent victims
};

// Divisor under the service components: the weighted victim total by
// default, or the raw unweighted victim count to mirror the source
// methodology text literally.
enum class DenominatorMode { kWeightedVictims, kUnweightedN };

struct CostTableRow {
  int year = 0;
  double total_weighted_victims = 0.0;
  double avg_oop = 0.0;
  double avg_legal = 0.0;
  double avg_lost_time = 0.0;
  double avg_healthcare = 0.0;
  double total_per_victim = 0.0;
  double total_national = 0.0;
};

CostTableRow cost_components(const SurveyWaveAggregate& wave,
                             const CpiTable& cpi, const WageTable& wages,
                             const ServiceCostConfig& services,
                             DenominatorMode mode = DenominatorMode::kWeightedVictims);

double national_total(const CostTableRow& row, double weighted_victims);

// Piecewise-linear per-victim cost over the whole study calendar, anchored
// at the given month (1..12, default June) of each row's year; flat before
// the first and after the last anchor.
MonthlySeries interpolate_social_cost(const std::vector<CostTableRow>& rows,
                                      int anchor_month = 6);

CpiTable load_cpi_csv(std::istream& in);
WageTable load_wages_csv(std::istream& in);
std::vector<SurveyWaveAggregate> load_survey_csv(std::istream& in);
ServiceCostConfig load_services_config(std::istream& in,
                                       const std::string& origin = "<services>");

}  // namespace breachcost::socialcost
