#include "breachcost/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "breachcost/csv.hpp"

namespace breachcost::io {

using nlohmann::json;

namespace {

json event_to_json(const ingest::BreachEvent& event) {
  json j;
  j["org_name"] = event.org_name;
  if (!event.group_id.empty()) j["group_id"] = event.group_id;
  j["month"] = format_month(event.month);
  if (event.records) {
    j["records"] = *event.records;
  } else {
    j["records"] = nullptr;
  }
  j["category"] = ingest::to_string(event.category);
  j["source"] = ingest::to_string(event.source);
  j["basis"] = ingest::to_string(event.basis);
  if (event.state_residents) j["state_residents"] = *event.state_residents;
  return j;
}

ingest::BreachEvent event_from_json(const json& j) {
  ingest::BreachEvent event;
  event.org_name = j.at("org_name").get<std::string>();
  if (j.contains("group_id")) event.group_id = j.at("group_id").get<std::string>();
  event.month = parse_month(j.at("month").get<std::string>());
  if (!j.at("records").is_null()) {
    event.records = j.at("records").get<double>();
  }
  event.category = ingest::category_from_string(j.at("category").get<std::string>());
  event.source = ingest::source_from_string(j.at("source").get<std::string>());
  event.basis = ingest::basis_from_string(j.at("basis").get<std::string>());
  if (j.contains("state_residents")) {
    event.state_residents = j.at("state_residents").get<long long>();
  }
  return event;
}

json slope_to_json(const augment::OlsSlope& slope) {
  return json{{"slope", slope.slope},
              {"intercept", slope.intercept},
              {"n_pairs", slope.n_pairs},
              {"residual_sum_squares", slope.residual_sum_squares},
              {"with_intercept", slope.with_intercept}};
}

augment::OlsSlope slope_from_json(const json& j) {
  augment::OlsSlope slope;
  slope.slope = j.at("slope").get<double>();
  slope.intercept = j.at("intercept").get<double>();
  slope.n_pairs = j.at("n_pairs").get<std::size_t>();
  slope.residual_sum_squares = j.at("residual_sum_squares").get<double>();
  slope.with_intercept = j.at("with_intercept").get<bool>();
  return slope;
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw std::invalid_argument("malformed JSON document");
  }
  return j;
}

// Missing keys and type mismatches surface as nlohmann exceptions, which sit
// outside the logic_error/runtime_error families callers classify on; rewrap
// them as bad-input errors.
template <typename F>
auto decode(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const EventsDocument& doc) {
  json j;
  j["events"] = json::array();
  for (const auto& event : doc.events) {
    j["events"].push_back(event_to_json(event));
  }
  j["pairs"] = json::array();
  for (const auto& pair : doc.pairs) {
    j["pairs"].push_back(json{{"state_residents", pair.state_residents},
                              {"national_records", pair.national_records}});
  }
  if (doc.merge) {
    j["merge"] = json{{"additions", doc.merge->additions},
                      {"pending", doc.merge->pending},
                      {"filtered_pairs", doc.merge->filtered_pairs}};
  }
  if (doc.audit) {
    json audit;
    if (doc.audit->slope) audit["slope"] = slope_to_json(*doc.audit->slope);
    audit["category_weights"] = json::object();
    for (const auto& [category, weight] : doc.audit->category_weights) {
      audit["category_weights"][ingest::to_string(category)] = weight;
    }
    audit["category_counts"] = json::object();
    for (const auto& [category, count] : doc.audit->category_counts) {
      audit["category_counts"][ingest::to_string(category)] = count;
    }
    audit["annual_volume"] = doc.audit->annual_volume;
    audit["baseline_years"] = doc.audit->baseline_years;
    audit["estimated_events"] = doc.audit->estimated_events;
    audit["imputed_events"] = doc.audit->imputed_events;
    j["audit"] = std::move(audit);
  }
  return j.dump(2) + "\n";
}

EventsDocument events_from_json(const std::string& text) {
  const json j = parse_document(text);
  return decode("events document", [&] {
  EventsDocument doc;
  for (const auto& item : j.at("events")) {
    doc.events.push_back(event_from_json(item));
  }
  if (j.contains("pairs")) {
    for (const auto& item : j.at("pairs")) {
      doc.pairs.push_back(
          {item.at("state_residents").get<long long>(),
           item.at("national_records").get<double>()});
    }
  }
  if (j.contains("merge")) {
    MergeStats merge;
    merge.additions = j.at("merge").at("additions").get<std::size_t>();
    merge.pending = j.at("merge").at("pending").get<std::size_t>();
    merge.filtered_pairs =
        j.at("merge").at("filtered_pairs").get<std::size_t>();
    doc.merge = merge;
  }
  if (j.contains("audit")) {
    const json& a = j.at("audit");
    AugmentAudit audit;
    if (a.contains("slope")) audit.slope = slope_from_json(a.at("slope"));
    for (const auto& [label, weight] : a.at("category_weights").items()) {
      audit.category_weights[ingest::category_from_string(label)] =
          weight.get<double>();
    }
    for (const auto& [label, count] : a.at("category_counts").items()) {
      audit.category_counts[ingest::category_from_string(label)] =
          count.get<std::size_t>();
    }
    audit.annual_volume = a.at("annual_volume").get<double>();
    audit.baseline_years = a.at("baseline_years").get<int>();
    audit.estimated_events = a.at("estimated_events").get<std::size_t>();
    audit.imputed_events = a.at("imputed_events").get<std::size_t>();
    doc.audit = std::move(audit);
  }
  return doc;
  });
}

std::string to_json(const StudyDocument& doc) {
  json j;
  j["threshold"] = doc.threshold;
  j["gap"] = doc.gap;
  j["pre_window"] = doc.pre_window;
  j["post_window"] = doc.post_window;
  j["placebo"] = doc.placebo;
  j["events"] = json::array();
  for (const auto& event : doc.events) {
    json e;
    e["t0"] = format_month(event.t0);
    e["members"] = json::array();
    for (MonthIndex month : event.member_months) {
      e["members"].push_back(format_month(month));
    }
    e["total_records"] = event.total_records;
    j["events"].push_back(std::move(e));
  }
  j["results"] = json::array();
  for (const auto& result : doc.results) {
    json r;
    r["lag"] = result.lag;
    r["n_events"] = result.n_events;
    r["w_plus"] = result.w_plus ? json(*result.w_plus) : json(nullptr);
    r["p_value"] = result.p_value ? json(*result.p_value) : json(nullptr);
    r["mean_delta"] = result.mean_delta;
    r["deltas"] = result.deltas;
    r["delta_events"] = json::array();
    for (MonthIndex month : result.event_months) {
      r["delta_events"].push_back(format_month(month));
    }
    r["excluded_events"] = result.excluded_events;
    r["diagnostic"] = result.diagnostic;
    j["results"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

StudyDocument study_from_json(const std::string& text) {
  const json j = parse_document(text);
  return decode("study document", [&] {
  StudyDocument doc;
  doc.threshold = j.at("threshold").get<double>();
  doc.gap = j.at("gap").get<int>();
  doc.pre_window = j.at("pre_window").get<int>();
  doc.post_window = j.at("post_window").get<int>();
  doc.placebo = j.at("placebo").get<bool>();
  for (const auto& e : j.at("events")) {
    eventstudy::MegaEvent event;
    event.t0 = parse_month(e.at("t0").get<std::string>());
    for (const auto& month : e.at("members")) {
      event.member_months.push_back(parse_month(month.get<std::string>()));
    }
    event.total_records = e.at("total_records").get<double>();
    doc.events.push_back(std::move(event));
  }
  for (const auto& r : j.at("results")) {
    eventstudy::EventStudyResult result;
    result.lag = r.at("lag").get<int>();
    result.n_events = r.at("n_events").get<std::size_t>();
    if (!r.at("w_plus").is_null()) result.w_plus = r.at("w_plus").get<double>();
    if (!r.at("p_value").is_null()) {
      result.p_value = r.at("p_value").get<double>();
    }
    result.mean_delta = r.at("mean_delta").get<double>();
    result.deltas = r.at("deltas").get<std::vector<double>>();
    if (r.contains("delta_events")) {
      for (const auto& month : r.at("delta_events")) {
        result.event_months.push_back(parse_month(month.get<std::string>()));
      }
    }
    result.excluded_events = r.at("excluded_events").get<std::size_t>();
    result.diagnostic = r.at("diagnostic").get<std::string>();
    doc.results.push_back(std::move(result));
  }
  return doc;
  });
}

std::string to_json(const projection::ConversionFit& fit) {
  json j;
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["c"] = fit.c;
  j["fit_start"] = format_month(fit.fit_start);
  j["fit_end"] = format_month(fit.fit_end);
  j["n_points"] = fit.n_points;
  j["residual_sum_squares"] = fit.residual_sum_squares;
  return j.dump(2) + "\n";
}

projection::ConversionFit fit_from_json(const std::string& text) {
  const json j = parse_document(text);
  return decode("conversion fit", [&] {
  projection::ConversionFit fit;
  fit.a = j.at("a").get<double>();
  fit.b = j.at("b").get<double>();
  fit.c = j.at("c").get<double>();
  if (j.contains("fit_start")) {
    fit.fit_start = parse_month(j.at("fit_start").get<std::string>());
    fit.fit_end = parse_month(j.at("fit_end").get<std::string>());
  }
  if (j.contains("n_points")) fit.n_points = j.at("n_points").get<std::size_t>();
  if (j.contains("residual_sum_squares")) {
    fit.residual_sum_squares = j.at("residual_sum_squares").get<double>();
  }
  return fit;
  });
}

std::string cost_rows_to_json(
    const std::vector<socialcost::CostTableRow>& rows) {
  json j = json::array();
  for (const auto& row : rows) {
    j.push_back(json{{"year", row.year},
                     {"total_weighted_victims", row.total_weighted_victims},
                     {"avg_oop", row.avg_oop},
                     {"avg_legal", row.avg_legal},
                     {"avg_lost_time", row.avg_lost_time},
                     {"avg_healthcare", row.avg_healthcare},
                     {"total_per_victim", row.total_per_victim},
                     {"total_national", row.total_national}});
  }
  return j.dump(2) + "\n";
}

std::vector<socialcost::CostTableRow> cost_rows_from_json(
    const std::string& text) {
  const json j = parse_document(text);
  return decode("cost table", [&] {
  std::vector<socialcost::CostTableRow> rows;
  for (const auto& item : j) {
    socialcost::CostTableRow row;
    row.year = item.at("year").get<int>();
    row.total_weighted_victims =
        item.at("total_weighted_victims").get<double>();
    row.avg_oop = item.at("avg_oop").get<double>();
    row.avg_legal = item.at("avg_legal").get<double>();
    row.avg_lost_time = item.at("avg_lost_time").get<double>();
    row.avg_healthcare = item.at("avg_healthcare").get<double>();
    row.total_per_victim = item.at("total_per_victim").get<double>();
    row.total_national = item.at("total_national").get<double>();
    rows.push_back(row);
  }
  return rows;
  });
}

std::string to_json(const BoundsDocument& doc) {
  json j;
  j["alpha"] = doc.alpha;
  j["window_months"] = doc.window_months;
  j["results"] = json::array();
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  for (const auto& result : doc.results) {
    json r;
    r["month"] = format_month(result.month);
    r["records"] = result.records;
    r["projected_victims"] = result.projected_victims;
    r["upper_bound"] = result.upper_bound;
    r["delta"] = opt(result.delta);
    r["per_victim_cost"] = opt(result.per_victim_cost);
    r["cost_year"] = result.cost_year ? json(*result.cost_year) : json(nullptr);
    r["lower_bound"] = opt(result.lower_bound);
    r["settlement"] = opt(result.settlement);
    r["ratio_lower"] = opt(result.ratio_lower);
    r["ratio_upper"] = opt(result.ratio_upper);
    j["results"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

BoundsDocument bounds_from_json(const std::string& text) {
  const json j = parse_document(text);
  return decode("bounds document", [&] {
  BoundsDocument doc;
  doc.alpha = j.at("alpha").get<double>();
  doc.window_months = j.at("window_months").get<int>();
  const auto opt = [](const json& v) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  for (const auto& r : j.at("results")) {
    BreachBound bound;
    bound.month = parse_month(r.at("month").get<std::string>());
    bound.records = r.at("records").get<double>();
    bound.projected_victims = r.at("projected_victims").get<double>();
    bound.upper_bound = r.at("upper_bound").get<double>();
    bound.delta = opt(r.at("delta"));
    bound.per_victim_cost = opt(r.at("per_victim_cost"));
    if (!r.at("cost_year").is_null()) {
      bound.cost_year = r.at("cost_year").get<int>();
    }
    bound.lower_bound = opt(r.at("lower_bound"));
    bound.settlement = opt(r.at("settlement"));
    bound.ratio_lower = opt(r.at("ratio_lower"));
    bound.ratio_upper = opt(r.at("ratio_upper"));
    doc.results.push_back(bound);
  }
  return doc;
  });
}

std::string month_map_to_json(const std::map<MonthIndex, double>& values) {
  json j = json::object();
  for (const auto& [month, value] : values) {
    j[format_month(month)] = value;
  }
  return j.dump(2) + "\n";
}

std::map<MonthIndex, double> month_map_from_json(const std::string& text) {
  const json j = parse_document(text);
  if (!j.is_object()) {
    throw std::invalid_argument("expected a {\"YYYY-MM\": value} object");
  }
  return decode("month map", [&] {
    std::map<MonthIndex, double> values;
    for (const auto& [key, value] : j.items()) {
      values[parse_month(key)] = value.get<double>();
    }
    return values;
  });
}

void write_series_csv(std::ostream& out, const MonthlySeries& series) {
  write_csv_row(out, {"month", "value", "flag"});
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool missing = !series.defined(i);
    write_csv_row(out, {format_month(series.month_at(i)),
                        missing ? "" : format_double(series.value(i)),
                        to_string(series.flag(i))});
  }
}

MonthlySeries read_series_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(*header, {"month", "value", "flag"});

  std::optional<MonthIndex> start;
  std::vector<double> values;
  std::vector<SeriesFlag> flags;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    MonthIndex month = 0;
    try {
      month = parse_month((*row)[cols[0]]);
    } catch (const std::exception& err) {
      throw CsvParseError(line, "month", err.what());
    }
    if (!start) {
      start = month;
    } else if (month != *start + static_cast<MonthIndex>(values.size())) {
      throw CsvParseError(line, "month",
                          "months must be contiguous; expected " +
                              format_month(*start + static_cast<MonthIndex>(
                                                        values.size())));
    }
    SeriesFlag flag = SeriesFlag::kObserved;
    try {
      flag = series_flag_from_string((*row)[cols[2]]);
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "flag", err.what());
    }
    const std::string& value_text = (*row)[cols[1]];
    double value = 0.0;
    if (flag != SeriesFlag::kMissing) {
      if (value_text.empty()) {
        throw CsvParseError(line, "value", "empty value on a defined month");
      }
      const char* begin = value_text.data();
      const char* end = begin + value_text.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end) {
        throw CsvParseError(line, "value", "bad number '" + value_text + "'");
      }
    }
    values.push_back(value);
    flags.push_back(flag);
  }
  if (!start) {
    throw CsvParseError(1, "", "series has no rows");
  }
  return MonthlySeries(*start, std::move(values), std::move(flags));
}

void write_cost_table_csv(std::ostream& out,
                          const std::vector<socialcost::CostTableRow>& rows) {
  write_csv_row(out, {"year", "total_weighted_victims", "avg_oop", "avg_legal",
                      "avg_lost_time", "avg_healthcare", "total_per_victim",
                      "total_national"});
  for (const auto& row : rows) {
    write_csv_row(out, {std::to_string(row.year),
                        format_double(row.total_weighted_victims),
                        format_double(row.avg_oop),
                        format_double(row.avg_legal),
                        format_double(row.avg_lost_time),
                        format_double(row.avg_healthcare),
                        format_double(row.total_per_victim),
                        format_double(row.total_national)});
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, ptr);
}

}  // namespace breachcost::io
