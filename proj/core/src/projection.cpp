#include "breachcost/projection.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace breachcost::projection {

namespace {

// Solves a symmetric 3x3 system by Gaussian elimination with partial
// pivoting. Throws on a (numerically) singular matrix.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (m[pivot][col] == 0.0) {
      throw std::domain_error("degenerate fit: singular normal equations");
    }
    std::swap(m[col], m[pivot]);
    for (int row = col + 1; row < 3; ++row) {
      const double f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double rhs = m[row][3];
    for (int k = row + 1; k < 3; ++k) rhs -= m[row][k] * x[k];
    x[row] = rhs / m[row][row];
  }
  return x;
}

}  // namespace

ConversionFit fit_log_quadratic(const MonthlySeries& conversion) {
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < conversion.size(); ++i) {
    if (!conversion.defined(i)) continue;
    const double value = conversion.value(i);
    if (value <= 0.0) {
      throw std::domain_error("conversion rate at " +
                              format_month(conversion.month_at(i)) +
                              " is not positive; cannot take its log");
    }
    ts.push_back(static_cast<double>(conversion.month_at(i)));
    ys.push_back(std::log(value));
  }
  if (ts.size() < 3) {
    throw std::invalid_argument("need at least 3 defined points, got " +
                                std::to_string(ts.size()));
  }

  double t_mean = 0.0;
  for (double t : ts) t_mean += t;
  t_mean /= static_cast<double>(ts.size());

  double s1 = 0, s2 = 0, s3 = 0, s4 = 0, sy = 0, ssy = 0, sssy = 0;
  const double n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double s = ts[i] - t_mean;
    const double s_2 = s * s;
    s1 += s;
    s2 += s_2;
    s3 += s_2 * s;
    s4 += s_2 * s_2;
    sy += ys[i];
    ssy += s * ys[i];
    sssy += s_2 * ys[i];
  }

  const auto solved = solve3({{
      {n, s1, s2, sy},
      {s1, s2, s3, ssy},
      {s2, s3, s4, sssy},
  }});
  const double C = solved[0];
  const double B = solved[1];
  const double A = solved[2];

  ConversionFit fit;
  fit.a = A;
  fit.b = B - 2.0 * A * t_mean;
  fit.c = A * t_mean * t_mean - B * t_mean + C;
  fit.fit_start = conversion.start();
  fit.fit_end = conversion.last();
  fit.n_points = ts.size();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double s = ts[i] - t_mean;
    const double r = ys[i] - (A * s * s + B * s + C);
    fit.residual_sum_squares += r * r;
  }
  if (!std::isfinite(fit.a) || !std::isfinite(fit.b) ||
      !std::isfinite(fit.c)) {
    throw std::domain_error("fit produced non-finite coefficients");
  }
  return fit;
}

double eval_conversion(const ConversionFit& fit, MonthIndex t) {
  const double td = static_cast<double>(t);
  return std::exp(fit.a * td * td + fit.b * td + fit.c);
}

double project_victims(double B, MonthIndex t, double alpha,
                       const ConversionFit& fit, MonthIndex t_end) {
  if (B < 0.0) throw std::domain_error("breach size must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
  double victims = 0.0;
  double decay = alpha * alpha;
  for (MonthIndex k = t + 2; k <= t_end; ++k) {
    victims += B * decay * eval_conversion(fit, k) / 100000.0;
    decay *= alpha;
  }
  return victims;
}

double upper_bound_cost(double B, MonthIndex t, double alpha,
                        const ConversionFit& fit, const MonthlySeries& S,
                        MonthIndex t_end) {
  if (B < 0.0) throw std::domain_error("breach size must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
  double cost = 0.0;
  double decay = alpha * alpha;
  for (MonthIndex k = t + 2; k <= t_end; ++k) {
    if (!S.covers(k) || !S.defined(S.index_of(k))) {
      throw std::invalid_argument("social-cost series has a gap at " +
                                  format_month(k));
    }
    cost += B * decay * eval_conversion(fit, k) / 100000.0 * S.value_at(k);
    decay *= alpha;
  }
  return cost;
}

SaturationStep saturation_step(double mu_prev, double records,
                               double population,
                               const SaturationParams& params) {
  if (!(mu_prev >= 0.0 && mu_prev < 1.0)) {
    throw std::domain_error("saturation index must lie in [0, 1)");
  }
  if (records < 0.0) throw std::domain_error("records must be non-negative");
  if (!(population > 0.0)) {
    throw std::domain_error("population must be positive");
  }
  if (!(params.theta > 0.0) || !(params.gamma0 > 0.0) ||
      !(params.market_scale > 0.0)) {
    throw std::domain_error("saturation parameters must be positive");
  }

  const double market = population * params.market_scale;
  const double exponent = params.theta * records * params.gamma0 / market;
  SaturationStep step;
  step.mu = 1.0 - (1.0 - mu_prev) * std::exp(-exponent);
  step.newly_exposed = (step.mu - mu_prev) * market;
  return step;
}

SaturationRun run_saturation(const MonthlySeries& exposure,
                             const MonthlySeries& population,
                             const SaturationParams& params) {
  if (exposure.start() != population.start() ||
      exposure.size() != population.size()) {
    throw std::invalid_argument(
        "exposure and population series are not aligned");
  }
  std::vector<double> cs(exposure.size(), 0.0);
  std::vector<double> mus(exposure.size(), 0.0);
  double mu = 0.0;
  for (std::size_t i = 0; i < exposure.size(); ++i) {
    if (!exposure.defined(i) || !population.defined(i)) {
      throw std::invalid_argument("series gap at " +
                                  format_month(exposure.month_at(i)));
    }
    const SaturationStep step =
        saturation_step(mu, exposure.value(i), population.value(i), params);
    mu = step.mu;
    cs[i] = step.newly_exposed;
    mus[i] = step.mu;
  }
  return {MonthlySeries(exposure.start(), std::move(cs)),
          MonthlySeries(exposure.start(), std::move(mus))};
}

MonthlySeries annual_to_monthly(const std::map<int, double>& by_year,
                                MonthIndex t_start, MonthIndex t_end) {
  if (t_start > t_end) {
    throw std::invalid_argument("empty month range");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(t_end - t_start) + 1);
  for (MonthIndex t = t_start; t <= t_end; ++t) {
    const int year = year_of(t);
    const auto it = by_year.find(year);
    if (it == by_year.end()) {
      throw std::invalid_argument("no annual value for year " +
                                  std::to_string(year));
    }
    values.push_back(it->second);
  }
  return MonthlySeries(t_start, std::move(values));
}

}  // namespace breachcost::projection
