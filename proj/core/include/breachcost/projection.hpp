#pragma once

#include <cstddef>
#include <map>

#include "breachcost/monthly_series.hpp"

namespace breachcost::projection {

// ln(C_t) = a t^2 + b t + c over the fitted window, t on the study
// calendar.
struct ConversionFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  MonthIndex fit_start = 0;
  MonthIndex fit_end = 0;
  std::size_t n_points = 0;
  double residual_sum_squares = 0.0;
};

// Least-squares log-quadratic fit of a conversion-rate series. Gap months
// are skipped; a defined non-positive value is an error (its log does not
// exist). The normal equations run on mean-centered t so t^2 up to 167^2
// does not wreck conditioning; coefficients are re-expanded to raw t.
ConversionFit fit_log_quadratic(const MonthlySeries& conversion);

double eval_conversion(const ConversionFit& fit, MonthIndex t);

// Eq.-4-style projected victim yield of a breach of B records in month t:
// sum over k = t+2 .. t_end of B * alpha^(k-t) * C_k / 100000. An empty
// horizon yields 0.
double project_victims(double B, MonthIndex t, double alpha,
                       const ConversionFit& fit,
                       MonthIndex t_end = kLastStudyMonth);

// The same sum with each month's victims priced at S_k per victim.
double upper_bound_cost(double B, MonthIndex t, double alpha,
                        const ConversionFit& fit, const MonthlySeries& S,
                        MonthIndex t_end = kLastStudyMonth);

struct SaturationParams {
  double theta = 1.75;        // identities exposed per record
  double gamma0 = 0.8;        // reachable share
  double market_scale = 1.0;  // Y
};

struct SaturationStep {
  double mu = 0.0;             // saturation index after the period
  double newly_exposed = 0.0;  // c_t, unique new individuals
};

// mu_t = 1 - (1 - mu_prev) * exp(-theta * r * gamma0 / (N * Y));
// c_t = (mu_t - mu_prev) * N * Y. mu never reaches 1 for finite input.
SaturationStep saturation_step(double mu_prev, double records,
                               double population,
                               const SaturationParams& params);

struct SaturationRun {
  MonthlySeries newly_exposed;  // c_t
  MonthlySeries saturation;     // mu_t
};

// Folds saturation_step over aligned exposure and population series,
// starting from mu = 0.
SaturationRun run_saturation(const MonthlySeries& exposure,
                             const MonthlySeries& population,
                             const SaturationParams& params);

// Expands annual population figures to a monthly series (each month takes
// its year's value) over [t_start, t_end].
MonthlySeries annual_to_monthly(const std::map<int, double>& by_year,
                                MonthIndex t_start, MonthIndex t_end);

}  // namespace breachcost::projection
