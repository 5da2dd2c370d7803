#include "breachcost/socialcost.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "breachcost/csv.hpp"

namespace breachcost::socialcost {

void CpiTable::set(int year, double cpi) {
  if (!(cpi > 0.0) || !std::isfinite(cpi)) {
    throw std::domain_error("CPI for " + std::to_string(year) +
                            " must be positive");
  }
  by_year_[year] = cpi;
}

double CpiTable::at(int year) const {
  const auto it = by_year_.find(year);
  if (it == by_year_.end()) {
    throw std::invalid_argument("no CPI entry for year " +
                                std::to_string(year));
  }
  return it->second;
}

bool CpiTable::contains(int year) const { return by_year_.count(year) > 0; }

CpiTable CpiTable::defaults() {
  CpiTable table;
  table.set(2008, 215.297);
  table.set(2012, 233.165);
  table.set(2014, 236.736);
  table.set(2016, 240.007);
  table.set(2018, 251.107);
  table.set(2021, 270.970);
  table.set(2023, 304.700);
  table.set(2024, 313.695);
  return table;
}

double adjust_inflation(double nominal, int from_year, const CpiTable& cpi) {
  return nominal * cpi.at(kCostBaseYear) / cpi.at(from_year);
}

double WageTable::nominal_at(int year) const {
  const auto it = nominal_by_year.find(year);
  if (it == nominal_by_year.end()) {
    throw std::invalid_argument("no wage entry for year " +
                                std::to_string(year));
  }
  return it->second;
}

ServiceCostConfig ServiceCostConfig::defaults() {
  return {
      .lawyer = {500.0, 2023},
      .doctor_visit = {100.0, 2024},
      .therapy_session = {100.0, 2024},
      .medication = {50.0, 2018},
  };
}

ServiceCostConfig ServiceCostConfig::prose_preset() {
  return {
      .lawyer = {445.0, kCostBaseYear},
      .doctor_visit = {133.0, kCostBaseYear},
      .therapy_session = {89.0, kCostBaseYear},
      .medication = {54.0, kCostBaseYear},
  };
}

void ServiceCostConfig::validate(const CpiTable& cpi) const {
  const auto check = [&cpi](const char* name, const ServiceCost& cost) {
    if (!(cost.nominal > 0.0)) {
      throw std::domain_error(std::string(name) + " cost must be positive");
    }
    if (!cpi.contains(cost.source_year)) {
      throw std::invalid_argument(std::string(name) + " source year " +
                                  std::to_string(cost.source_year) +
                                  " missing from the CPI table");
    }
  };
  check("lawyer", lawyer);
  check("doctor_visit", doctor_visit);
  check("therapy_session", therapy_session);
  check("medication", medication);
}

CostTableRow cost_components(const SurveyWaveAggregate& wave,
                             const CpiTable& cpi, const WageTable& wages,
                             const ServiceCostConfig& services,
                             DenominatorMode mode) {
  const double denominator = mode == DenominatorMode::kWeightedVictims
                                 ? wave.total_weighted_victims
                                 : wave.unweighted_n;
  if (denominator == 0.0) {
    throw std::domain_error("zero victim denominator for year " +
                            std::to_string(wave.year));
  }

  const auto adjusted = [&cpi](const ServiceCost& cost) {
    return adjust_inflation(cost.nominal, cost.source_year, cpi);
  };

  CostTableRow row;
  row.year = wave.year;
  row.total_weighted_victims = wave.total_weighted_victims;
  row.avg_oop = adjust_inflation(wave.avg_oop_nominal, wave.year, cpi);
  row.avg_legal = wave.lawyer_count * adjusted(services.lawyer) / denominator;
  row.avg_lost_time =
      wave.avg_hours * adjust_inflation(wages.nominal_at(wave.year), wave.year, cpi);
  row.avg_healthcare = (wave.doctor_count * adjusted(services.doctor_visit) +
                        wave.therapy_count * adjusted(services.therapy_session) +
                        wave.medication_count * adjusted(services.medication)) /
                       denominator;
  row.total_per_victim =
      row.avg_oop + row.avg_legal + row.avg_lost_time + row.avg_healthcare;
  row.total_national = national_total(row, wave.total_weighted_victims);
  return row;
}

double national_total(const CostTableRow& row, double weighted_victims) {
  if (weighted_victims < 0.0) {
    throw std::domain_error("negative victim total");
  }
  return row.total_per_victim * weighted_victims;
}

MonthlySeries interpolate_social_cost(const std::vector<CostTableRow>& rows,
                                      int anchor_month) {
  if (rows.size() < 2) {
    throw std::invalid_argument("need at least 2 cost rows, got " +
                                std::to_string(rows.size()));
  }
  std::vector<CostTableRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const CostTableRow& a, const CostTableRow& b) {
              return a.year < b.year;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].year == sorted[i - 1].year) {
      throw std::invalid_argument("duplicate cost row for year " +
                                  std::to_string(sorted[i].year));
    }
  }

  struct Anchor {
    MonthIndex t;
    double value;
  };
  std::vector<Anchor> anchors;
  anchors.reserve(sorted.size());
  for (const auto& row : sorted) {
    anchors.push_back({month_index(row.year, anchor_month),
                       row.total_per_victim});
  }

  std::vector<double> values(kStudyMonthCount, 0.0);
  std::vector<SeriesFlag> flags(kStudyMonthCount, SeriesFlag::kInterpolated);
  std::size_t segment = 0;
  for (MonthIndex t = kFirstStudyMonth; t <= kLastStudyMonth; ++t) {
    while (segment + 2 < anchors.size() && t >= anchors[segment + 1].t) {
      ++segment;
    }
    const Anchor& lo = anchors[segment];
    const Anchor& hi = anchors[segment + 1];
    double value = 0.0;
    SeriesFlag flag = SeriesFlag::kInterpolated;
    if (t <= anchors.front().t) {
      value = anchors.front().value;
      if (t == anchors.front().t) flag = SeriesFlag::kObserved;
    } else if (t >= anchors.back().t) {
      value = anchors.back().value;
      if (t == anchors.back().t) flag = SeriesFlag::kObserved;
    } else if (t == lo.t) {
      value = lo.value;
      flag = SeriesFlag::kObserved;
    } else if (t == hi.t) {
      value = hi.value;
      flag = SeriesFlag::kObserved;
    } else {
      const double frac =
          static_cast<double>(t - lo.t) / static_cast<double>(hi.t - lo.t);
      value = lo.value + frac * (hi.value - lo.value);
    }
    values[static_cast<std::size_t>(t)] = value;
    flags[static_cast<std::size_t>(t)] = flag;
  }
  return MonthlySeries(kFirstStudyMonth, std::move(values), std::move(flags));
}

namespace {

double parse_field_double(const std::string& text, std::size_t line,
                          const char* field) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || !std::isfinite(value)) {
    throw CsvParseError(line, field, "bad number '" + text + "'");
  }
  return value;
}

int parse_field_year(const std::string& text, std::size_t line) {
  const double value = parse_field_double(text, line, "year");
  const int year = static_cast<int>(value);
  if (static_cast<double>(year) != value) {
    throw CsvParseError(line, "year", "bad year '" + text + "'");
  }
  return year;
}

}  // namespace

CpiTable load_cpi_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(*header, {"year", "cpi"});
  CpiTable table;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    const int year = parse_field_year((*row)[cols[0]], line);
    try {
      table.set(year, parse_field_double((*row)[cols[1]], line, "cpi"));
    } catch (const std::domain_error& err) {
      throw CsvParseError(line, "cpi", err.what());
    }
  }
  if (!table.contains(kCostBaseYear)) {
    throw std::invalid_argument("CPI table lacks the base year " +
                                std::to_string(kCostBaseYear));
  }
  return table;
}

WageTable load_wages_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(*header, {"year", "nominal_wage"});
  WageTable table;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    const int year = parse_field_year((*row)[cols[0]], line);
    const double wage =
        parse_field_double((*row)[cols[1]], line, "nominal_wage");
    if (!(wage > 0.0)) {
      throw CsvParseError(line, "nominal_wage", "wage must be positive");
    }
    table.nominal_by_year[year] = wage;
  }
  return table;
}

std::vector<SurveyWaveAggregate> load_survey_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(
      *header,
      {"year", "total_weighted_victims", "avg_oop_nominal", "avg_hours",
       "lawyer_count", "doctor_count", "therapy_count", "medication_count",
       "unweighted_n"});
  std::vector<SurveyWaveAggregate> waves;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    SurveyWaveAggregate wave;
    wave.year = parse_field_year((*row)[cols[0]], line);
    wave.total_weighted_victims =
        parse_field_double((*row)[cols[1]], line, "total_weighted_victims");
    wave.avg_oop_nominal =
        parse_field_double((*row)[cols[2]], line, "avg_oop_nominal");
    wave.avg_hours = parse_field_double((*row)[cols[3]], line, "avg_hours");
    wave.lawyer_count =
        parse_field_double((*row)[cols[4]], line, "lawyer_count");
    wave.doctor_count =
        parse_field_double((*row)[cols[5]], line, "doctor_count");
    wave.therapy_count =
        parse_field_double((*row)[cols[6]], line, "therapy_count");
    wave.medication_count =
        parse_field_double((*row)[cols[7]], line, "medication_count");
    wave.unweighted_n =
        parse_field_double((*row)[cols[8]], line, "unweighted_n");
    for (double count : {wave.lawyer_count, wave.doctor_count,
                         wave.therapy_count, wave.medication_count}) {
      if (count < 0.0) {
        throw CsvParseError(line, "", "service counts must be non-negative");
      }
    }
    if (wave.avg_hours < 0.0) {
      throw CsvParseError(line, "avg_hours", "hours must be non-negative");
    }
    waves.push_back(wave);
  }
  return waves;
}

ServiceCostConfig load_services_config(std::istream& in,
                                       const std::string& origin) {
  ServiceCostConfig config = ServiceCostConfig::defaults();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const auto strip = [](const std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const auto fail = [&](const std::string& what) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": " + what);
    };
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail("expected 'service = nominal @ year'");
    const std::string key = strip(stripped.substr(0, eq));
    const std::string value = strip(stripped.substr(eq + 1));
    const auto at = value.find('@');
    if (at == std::string::npos) fail("expected 'nominal @ year'");
    ServiceCost cost;
    try {
      cost.nominal = std::stod(strip(value.substr(0, at)));
      cost.source_year = std::stoi(strip(value.substr(at + 1)));
    } catch (const std::exception&) {
      fail("bad 'nominal @ year' value '" + value + "'");
    }
    if (key == "lawyer") {
      config.lawyer = cost;
    } else if (key == "doctor_visit") {
      config.doctor_visit = cost;
    } else if (key == "therapy_session") {
      config.therapy_session = cost;
    } else if (key == "medication") {
      config.medication = cost;
    } else {
      fail("unknown service '" + key + "'");
    }
  }
  return config;
}

}  // namespace breachcost::socialcost
