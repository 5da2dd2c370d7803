#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "breachcost/augment.hpp"
#include "breachcost/calendar.hpp"
#include "breachcost/chart.hpp"
#include "breachcost/csv.hpp"
#include "breachcost/eventstudy.hpp"
#include "breachcost/ingest.hpp"
#include "breachcost/io.hpp"
#include "breachcost/manifest.hpp"
#include "breachcost/monthly_series.hpp"
#include "breachcost/projection.hpp"
#include "breachcost/series_ops.hpp"
#include "breachcost/socialcost.hpp"

namespace breachcost::cli {
namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

std::string slurp(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Parse errors from library loaders say "line N: ..." without naming the
// file; prepend the path so multi-input commands stay debuggable.
template <typename F>
auto from_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const CsvParseError& e) {
    throw std::invalid_argument(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

int parse_int_strict(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || text.empty()) {
    throw std::invalid_argument(what + " '" + text + "' is not an integer");
  }
  return value;
}

double parse_double_strict(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || text.empty() || !std::isfinite(value)) {
    throw std::invalid_argument(what + " '" + text + "' is not a number");
  }
  return value;
}

// Tracks inputs, outputs and warnings for the run manifest, written last so
// every data file is already on disk when it lands.
class RunContext {
 public:
  RunContext(const GlobalArgs& global, const PipelineConfig& config,
             std::string subcommand)
      : dir_(global.out_dir) {
    fs::create_directories(dir_);
    manifest_.subcommand = std::move(subcommand);
    manifest_.config = {
        {"alpha", io::format_double(config.alpha)},
        {"theta", io::format_double(config.theta)},
        {"gamma0", io::format_double(config.gamma0)},
        {"Y", io::format_double(config.market_scale)},
        {"mega_threshold", io::format_double(config.mega_threshold)},
        {"pre_window", std::to_string(config.pre_window)},
        {"post_window", std::to_string(config.post_window)},
        {"lags", std::to_string(config.lag_min) + ".." +
                     std::to_string(config.lag_max)},
        {"consolidation_gap", std::to_string(config.consolidation_gap)},
        {"baseline_T_years", std::to_string(config.baseline_years)},
    };
    if (global.seed) manifest_.config["seed"] = std::to_string(*global.seed);
  }

  void note_input(const std::string& path) {
    manifest_.inputs[path] = digest_file(path);
  }

  void warn(std::string message) {
    std::fprintf(stderr, "warning: %s\n", message.c_str());
    manifest_.warnings.push_back(std::move(message));
  }

  void write(const std::string& filename, const std::string& content) {
    write_raw(filename, content);
    manifest_.outputs.push_back(filename);
  }

  void finish() {
    manifest_.timestamp = rfc3339_utc_now();
    manifest_.outputs.push_back("manifest.json");
    write_raw("manifest.json", to_json(manifest_));
  }

 private:
  void write_raw(const std::string& filename, const std::string& content) {
    const fs::path target = dir_ / filename;
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + target.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("short write on " + target.string());
  }

  fs::path dir_;
  RunManifest manifest_;
};

std::string series_csv(const MonthlySeries& series) {
  std::ostringstream out;
  io::write_series_csv(out, series);
  return out.str();
}

chart::ChartSeries chart_points(const MonthlySeries& series,
                                std::string label) {
  chart::ChartSeries cs{std::move(label), {}};
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.defined(i)) {
      cs.points.emplace_back(static_cast<double>(series.month_at(i)),
                             series.value(i));
    }
  }
  return cs;
}

// Chart failures (too few points, degenerate ranges) should not sink the
// data outputs they illustrate.
template <typename F>
void try_plot(RunContext& ctx, const std::string& filename, F&& render) {
  try {
    ctx.write(filename, render());
  } catch (const std::exception& e) {
    ctx.warn(filename + " skipped: " + e.what());
  }
}

std::vector<series::AnchorPoint> load_anchor_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(*header, {"month", "value"});
  std::vector<series::AnchorPoint> anchors;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    series::AnchorPoint anchor;
    try {
      anchor.t = parse_month((*row)[cols[0]]);
    } catch (const std::exception& e) {
      throw CsvParseError(line, "month", e.what());
    }
    anchor.value = parse_double_strict((*row)[cols[1]], "anchor value");
    if (anchor.value <= 0.0) {
      throw CsvParseError(line, "value", "anchor values must be positive");
    }
    anchors.push_back(anchor);
  }
  return anchors;
}

std::map<int, double> load_population_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw CsvParseError(1, "", "empty input: missing header row");
  const auto cols = resolve_columns(*header, {"year", "population"});
  std::map<int, double> by_year;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "", "wrong field count");
    }
    const int year = parse_int_strict((*row)[cols[0]], "year");
    const double population =
        parse_double_strict((*row)[cols[1]], "population");
    if (population <= 0.0) {
      throw CsvParseError(line, "population", "population must be positive");
    }
    by_year[year] = population;
  }
  if (by_year.empty()) throw CsvParseError(1, "", "population has no rows");
  return by_year;
}

void report_skipped(RunContext& ctx, const std::string& path,
                    const std::vector<ingest::SkippedRow>& skipped) {
  for (const auto& row : skipped) {
    ctx.warn(path + " line " + std::to_string(row.line) + ": " + row.reason +
             " (row skipped)");
  }
}

void apply_lag_range(PipelineConfig& config, const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    throw std::invalid_argument("lag range '" + text +
                                "' must look like lo..hi");
  }
  config.lag_min = parse_int_strict(text.substr(0, pos), "lag");
  config.lag_max = parse_int_strict(text.substr(pos + 2), "lag");
}

struct CostInputs {
  std::vector<socialcost::SurveyWaveAggregate> waves;
  socialcost::CpiTable cpi;
  socialcost::WageTable wages;
  socialcost::ServiceCostConfig services;
};

CostInputs load_cost_inputs(RunContext& ctx, const std::string& survey_path,
                            const std::string& wages_path,
                            const std::optional<std::string>& cpi_path,
                            const std::optional<std::string>& services_path,
                            bool prose_services) {
  if (prose_services && services_path) {
    throw std::invalid_argument(
        "choose --services or --prose-services, not both");
  }
  CostInputs inputs;
  {
    auto in = open_input(survey_path);
    inputs.waves =
        from_file(survey_path, [&] { return socialcost::load_survey_csv(in); });
    ctx.note_input(survey_path);
  }
  {
    auto in = open_input(wages_path);
    inputs.wages =
        from_file(wages_path, [&] { return socialcost::load_wages_csv(in); });
    ctx.note_input(wages_path);
  }
  if (cpi_path) {
    auto in = open_input(*cpi_path);
    inputs.cpi =
        from_file(*cpi_path, [&] { return socialcost::load_cpi_csv(in); });
    ctx.note_input(*cpi_path);
  } else {
    inputs.cpi = socialcost::CpiTable::defaults();
  }
  if (prose_services) {
    inputs.services = socialcost::ServiceCostConfig::prose_preset();
  } else if (services_path) {
    auto in = open_input(*services_path);
    inputs.services = from_file(*services_path, [&] {
      return socialcost::load_services_config(in, *services_path);
    });
    ctx.note_input(*services_path);
  } else {
    inputs.services = socialcost::ServiceCostConfig::defaults();
  }
  inputs.services.validate(inputs.cpi);
  return inputs;
}

std::vector<socialcost::CostTableRow> build_cost_rows(
    const CostInputs& inputs, socialcost::DenominatorMode mode) {
  std::vector<socialcost::CostTableRow> rows;
  rows.reserve(inputs.waves.size());
  for (const auto& wave : inputs.waves) {
    rows.push_back(socialcost::cost_components(wave, inputs.cpi, inputs.wages,
                                               inputs.services, mode));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.year < b.year; });
  return rows;
}

socialcost::DenominatorMode denominator_mode(const std::string& label) {
  if (label == "weighted") return socialcost::DenominatorMode::kWeightedVictims;
  if (label == "unweighted") return socialcost::DenominatorMode::kUnweightedN;
  throw std::invalid_argument("denominator must be weighted or unweighted");
}

// The per-victim cost applied to a breach month comes from the survey year
// whose anchor month lies nearest; ties go to the earlier year.
const socialcost::CostTableRow& nearest_cost_row(
    const std::vector<socialcost::CostTableRow>& rows, MonthIndex t,
    int anchor_month) {
  if (rows.empty()) throw std::invalid_argument("cost table has no rows");
  const socialcost::CostTableRow* best = nullptr;
  int best_distance = 0;
  for (const auto& row : rows) {
    const int distance = std::abs(month_index(row.year, anchor_month) - t);
    if (!best || distance < best_distance ||
        (distance == best_distance && row.year < best->year)) {
      best = &row;
      best_distance = distance;
    }
  }
  return *best;
}

std::map<MonthIndex, double> load_month_map(RunContext& ctx,
                                            const std::string& path) {
  auto values = from_file(path, [&] {
    return io::month_map_from_json(slurp(path));
  });
  ctx.note_input(path);
  return values;
}

io::BoundsDocument compute_bounds(
    RunContext& ctx, const std::vector<std::pair<MonthIndex, double>>& cases,
    const projection::ConversionFit& fit,
    const std::vector<socialcost::CostTableRow>& rows, const MonthlySeries& S,
    const std::map<MonthIndex, double>* deltas,
    const std::map<MonthIndex, double>* settlements, double alpha,
    int window) {
  io::BoundsDocument doc;
  doc.alpha = alpha;
  doc.window_months = window;
  for (const auto& [t, records] : cases) {
    io::BreachBound bound;
    bound.month = t;
    bound.records = records;
    bound.projected_victims = projection::project_victims(records, t, alpha, fit);
    bound.upper_bound = projection::upper_bound_cost(records, t, alpha, fit, S);
    if (t + 2 > kLastStudyMonth) {
      ctx.warn("breach " + format_month(t) +
               " has an empty projection horizon");
    }
    if (deltas) {
      const auto it = deltas->find(t);
      if (it != deltas->end()) {
        bound.delta = it->second;
        const auto& row = nearest_cost_row(rows, t, 6);
        bound.cost_year = row.year;
        bound.per_victim_cost = row.total_per_victim;
        bound.lower_bound = eventstudy::lower_bound_cost(
            *bound.delta, window, *bound.per_victim_cost);
      } else {
        ctx.warn("no post-event delta for " + format_month(t) +
                 "; lower bound omitted");
      }
    }
    if (settlements) {
      const auto it = settlements->find(t);
      if (it != settlements->end()) {
        if (it->second <= 0.0) {
          throw std::invalid_argument("settlement for " + format_month(t) +
                                      " must be positive");
        }
        bound.settlement = it->second;
        if (bound.lower_bound) {
          bound.ratio_lower = *bound.lower_bound / *bound.settlement;
        }
        bound.ratio_upper = bound.upper_bound / *bound.settlement;
      }
    }
    doc.results.push_back(std::move(bound));
  }
  return doc;
}

std::string saturation_csv(const projection::SaturationRun& run) {
  std::ostringstream out;
  write_csv_row(out, {"month", "newly_exposed", "saturation"});
  for (std::size_t i = 0; i < run.newly_exposed.size(); ++i) {
    write_csv_row(out, {format_month(run.newly_exposed.month_at(i)),
                        io::format_double(run.newly_exposed.value(i)),
                        io::format_double(run.saturation.value(i))});
  }
  return out.str();
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string report_text(const std::vector<socialcost::CostTableRow>& rows,
                        const io::BoundsDocument& bounds) {
  std::ostringstream out;
  out << "Per-victim social cost by survey year (2021 dollars)\n\n";
  out << "  year  weighted victims  out-of-pocket     legal  lost time"
         "  healthcare  per victim        national total\n";
  for (const auto& row : rows) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "  %4d  %16.1f  %13.2f  %8.2f  %9.2f  %10.2f  %10.2f  %20.2f\n",
                  row.year, row.total_weighted_victims, row.avg_oop,
                  row.avg_legal, row.avg_lost_time, row.avg_healthcare,
                  row.total_per_victim, row.total_national);
    out << line;
  }
  out << "\nCase-study cost bounds (alpha = "
      << io::format_double(bounds.alpha) << ", lower-bound window = "
      << bounds.window_months << " months)\n\n";
  out << "  month    projected victims           lower bound"
         "           upper bound            settlement\n";
  for (const auto& result : bounds.results) {
    const auto opt = [](const std::optional<double>& v) {
      return v ? format_fixed(*v, 2) : std::string("-");
    };
    char line[256];
    std::snprintf(line, sizeof line, "  %s  %17.1f  %20s  %20s  %20s\n",
                  format_month(result.month).c_str(),
                  result.projected_victims,
                  opt(result.lower_bound).c_str(),
                  format_fixed(result.upper_bound, 2).c_str(),
                  opt(result.settlement).c_str());
    out << line;
  }
  return out.str();
}

MonthlySeries exposure_from_events(
    RunContext& ctx, const std::vector<ingest::BreachEvent>& events,
    MonthIndex start, std::size_t length, const std::string& origin) {
  std::vector<double> totals(length, 0.0);
  std::size_t outside = 0;
  std::size_t undisclosed = 0;
  for (const auto& event : events) {
    if (!event.records) {
      ++undisclosed;
      continue;
    }
    const MonthIndex offset = event.month - start;
    if (offset < 0 || static_cast<std::size_t>(offset) >= length) {
      ++outside;
      continue;
    }
    totals[static_cast<std::size_t>(offset)] += *event.records;
  }
  if (outside > 0) {
    ctx.warn(std::to_string(outside) + " events from " + origin +
             " fall outside the victim series and were ignored");
  }
  if (undisclosed > 0) {
    ctx.warn(std::to_string(undisclosed) + " events from " + origin +
             " still lack record counts; run augment first");
  }
  return MonthlySeries(start, std::move(totals));
}

}  // namespace

int run_ingest(const GlobalArgs& global, const IngestArgs& args) {
  PipelineConfig config = global.config;
  config.validate();
  if (args.match_gap < 0) {
    throw std::invalid_argument("match gap must be >= 0");
  }
  RunContext ctx(global, config, "ingest");

  auto breaches_in = open_input(args.breaches);
  auto parsed = from_file(args.breaches,
                          [&] { return ingest::parse_breaches(breaches_in); });
  ctx.note_input(args.breaches);
  report_skipped(ctx, args.breaches, parsed.skipped);
  auto events = ingest::dedup_by_group(parsed.records);

  const auto matcher = ingest::default_matcher(args.match_gap);
  if (args.hhs) {
    auto hhs_in = open_input(*args.hhs);
    auto hhs_parsed =
        from_file(*args.hhs, [&] { return ingest::parse_breaches(hhs_in); });
    ctx.note_input(*args.hhs);
    report_skipped(ctx, *args.hhs, hhs_parsed.skipped);
    events = ingest::merge_hhs(std::move(events),
                               ingest::dedup_by_group(hhs_parsed.records),
                               matcher);
  }

  io::EventsDocument doc;
  if (args.filings) {
    auto filings_in = open_input(*args.filings);
    auto filings_parsed = from_file(
        *args.filings, [&] { return ingest::parse_filings(filings_in); });
    ctx.note_input(*args.filings);
    report_skipped(ctx, *args.filings, filings_parsed.skipped);
    const auto filtered =
        ingest::keyword_filter(filings_parsed.filings, ingest::default_stoplist());
    if (filtered.size() < filings_parsed.filings.size()) {
      ctx.warn(std::to_string(filings_parsed.filings.size() - filtered.size()) +
               " filings removed by the keyword stoplist");
    }
    auto merge = ingest::merge_state_filings(events, filtered, matcher);
    doc.pairs = merge.pairs;
    doc.merge = io::MergeStats{merge.additions.size(), merge.pending.size(),
                               merge.filtered_pairs};
    if (merge.filtered_pairs > 0) {
      ctx.warn(std::to_string(merge.filtered_pairs) +
               " matched filings failed the national >= 5x state screen");
    }
    if (!merge.pending.empty()) {
      ctx.warn(std::to_string(merge.pending.size()) +
               " matched events carry state residents but no national count");
    }
    events.insert(events.end(),
                  std::make_move_iterator(merge.additions.begin()),
                  std::make_move_iterator(merge.additions.end()));
  }
  doc.events = std::move(events);

  ctx.write("events.json", io::to_json(doc));
  ctx.finish();
  return 0;
}

int run_augment(const GlobalArgs& global, const AugmentArgs& args) {
  PipelineConfig config = global.config;
  config.validate();
  RunContext ctx(global, config, "augment");

  auto doc = from_file(args.events,
                       [&] { return io::events_from_json(slurp(args.events)); });
  ctx.note_input(args.events);

  io::AugmentAudit audit;
  audit.baseline_years = config.baseline_years;

  const auto count_with_residents = [&] {
    return static_cast<std::size_t>(std::count_if(
        doc.events.begin(), doc.events.end(), [](const auto& e) {
          return !e.records.has_value() && e.state_residents.has_value();
        }));
  };
  const std::size_t awaiting_estimate = count_with_residents();
  if (doc.pairs.size() >= 2) {
    audit.slope = augment::fit_state_national(doc.pairs, args.with_intercept);
    if (awaiting_estimate > 0) {
      doc.events =
          augment::apply_state_estimates(std::move(doc.events), *audit.slope);
      audit.estimated_events = awaiting_estimate;
    }
  } else if (awaiting_estimate > 0) {
    ctx.warn("only " + std::to_string(doc.pairs.size()) +
             " calibration pairs; state-resident counts left undisclosed");
  }

  auto weights = augment::category_median_weights(doc.events);
  auto counts = augment::undisclosed_counts(doc.events);
  for (auto it = counts.begin(); it != counts.end();) {
    if (weights.count(it->first) == 0) {
      ctx.warn(std::string("no disclosed median for category ") +
               ingest::to_string(it->first) + "; its " +
               std::to_string(it->second) +
               " undisclosed events are excluded from the annual baseline");
      it = counts.erase(it);
    } else {
      ++it;
    }
  }
  if (!counts.empty()) {
    const auto baseline =
        augment::annual_baseline(counts, weights, config.baseline_years);
    audit.annual_volume = baseline.annual_volume;
    doc.events = augment::impute_undisclosed(std::move(doc.events), baseline);
  }
  audit.category_weights = std::move(weights);
  audit.category_counts = std::move(counts);
  for (const auto& event : doc.events) {
    if (event.basis == ingest::RecordBasis::kImputed) ++audit.imputed_events;
  }
  const auto still_undisclosed = static_cast<std::size_t>(
      std::count_if(doc.events.begin(), doc.events.end(),
                    [](const auto& e) { return !e.records.has_value(); }));
  if (still_undisclosed > 0) {
    ctx.warn(std::to_string(still_undisclosed) +
             " events remain without record counts");
  }
  doc.audit = std::move(audit);

  ctx.write("events_augmented.json", io::to_json(doc));
  ctx.finish();
  return 0;
}

int run_cost_table(const GlobalArgs& global, const CostTableArgs& args) {
  PipelineConfig config = global.config;
  config.validate();
  if (args.anchor_month < 1 || args.anchor_month > 12) {
    throw std::invalid_argument("anchor month must be between 1 and 12");
  }
  const auto mode = denominator_mode(args.denominator);
  RunContext ctx(global, config, "cost-table");

  const auto inputs = load_cost_inputs(ctx, args.survey, args.wages, args.cpi,
                                       args.services, args.prose_services);
  const auto rows = build_cost_rows(inputs, mode);
  const auto S = socialcost::interpolate_social_cost(rows, args.anchor_month);

  std::ostringstream table;
  io::write_cost_table_csv(table, rows);
  ctx.write("cost_table.csv", table.str());
  ctx.write("cost_table.json", io::cost_rows_to_json(rows));
  ctx.write("social_cost.csv", series_csv(S));

  if (global.plot) {
    try_plot(ctx, "cost_evolution.svg", [&] {
      chart::ChartOptions options;
      options.title = "per-victim social cost";
      options.x_label = "month";
      options.y_label = "2021 dollars";
      return chart::emit_chart(chart::ChartKind::kCostEvolution,
                               {chart_points(S, "per-victim cost")}, options);
    });
  }
  ctx.finish();
  return 0;
}

int run_interpolate(const GlobalArgs& global, const InterpolateArgs& args) {
  PipelineConfig config = global.config;
  config.validate();
  RunContext ctx(global, config, "interpolate");

  auto in = open_input(args.anchors);
  const auto anchors =
      from_file(args.anchors, [&] { return load_anchor_csv(in); });
  ctx.note_input(args.anchors);

  const MonthIndex from =
      args.from ? parse_month(*args.from) : kFirstStudyMonth;
  const MonthIndex to = args.to ? parse_month(*args.to) : kLastStudyMonth;
  const auto interpolated = series::log_linear_interpolate(anchors, from, to);

  ctx.write("interpolated.csv", series_csv(interpolated));
  if (global.plot) {
    try_plot(ctx, "interpolated.svg", [&] {
      chart::ChartOptions options;
      options.title = "monthly victims, interpolated between anchors";
      options.x_label = "month";
      options.y_label = "victims per month";
      return chart::emit_chart(chart::ChartKind::kOverlay,
                               {chart_points(interpolated, "victims")},
                               options);
    });
  }
  ctx.finish();
  return 0;
}

int run_conversion(const GlobalArgs& global, const ConversionArgs& args) {
  PipelineConfig config = global.config;
  if (args.alpha) config.alpha = *args.alpha;
  config.validate();
  if (args.window < 1) {
    throw std::invalid_argument("moving-average window must be >= 1");
  }
  RunContext ctx(global, config, "conversion");

  auto doc = from_file(args.events,
                       [&] { return io::events_from_json(slurp(args.events)); });
  ctx.note_input(args.events);
  auto victims_in = open_input(args.victims);
  const auto victims =
      from_file(args.victims, [&] { return io::read_series_csv(victims_in); });
  ctx.note_input(args.victims);

  const auto exposure = exposure_from_events(
      ctx, doc.events, victims.start(), victims.size(), args.events);
  const auto pool = series::discounted_pool(exposure, config.alpha);
  const auto conversion = series::conversion_rate(victims, pool);
  const auto smoothed = series::moving_average(conversion, args.window);
  const auto fit = projection::fit_log_quadratic(smoothed);

  ctx.write("exposure.csv", series_csv(exposure));
  ctx.write("pool.csv", series_csv(pool));
  ctx.write("conversion.csv", series_csv(conversion));
  ctx.write("conversion_smoothed.csv", series_csv(smoothed));
  ctx.write("fit.json", io::to_json(fit));

  if (global.plot) {
    try_plot(ctx, "conversion.svg", [&] {
      chart::ChartSeries fitted{"log-quadratic fit", {}};
      for (MonthIndex t = fit.fit_start; t <= fit.fit_end; ++t) {
        fitted.points.emplace_back(static_cast<double>(t),
                                   projection::eval_conversion(fit, t));
      }
      chart::ChartOptions options;
      options.title = "exposure-to-victim conversion";
      options.x_label = "month";
      options.y_label = "victims per 100k exposed";
      return chart::emit_chart(
          chart::ChartKind::kConversion,
          {chart_points(conversion, "conversion rate"),
           chart_points(smoothed,
                        std::to_string(args.window) + "-month mean"),
           std::move(fitted)},
          options);
    });
  }
  ctx.finish();
  return 0;
}

int run_event_study(const GlobalArgs& global, const EventStudyArgs& args) {
  PipelineConfig config = global.config;
  if (args.threshold) config.mega_threshold = *args.threshold;
  if (args.gap) config.consolidation_gap = *args.gap;
  if (args.pre) config.pre_window = *args.pre;
  if (args.post) config.post_window = *args.post;
  if (args.lags) apply_lag_range(config, *args.lags);
  config.validate();
  RunContext ctx(global, config, "event-study");

  auto doc = from_file(args.events,
                       [&] { return io::events_from_json(slurp(args.events)); });
  ctx.note_input(args.events);
  auto victims_in = open_input(args.victims);
  const auto victims =
      from_file(args.victims, [&] { return io::read_series_csv(victims_in); });
  ctx.note_input(args.victims);

  std::vector<eventstudy::MegaEvent> clusters;
  if (args.placebo) {
    const auto mega =
        eventstudy::detect_mega(doc.events, config.mega_threshold);
    const std::set<MonthIndex> mega_months(mega.begin(), mega.end());
    std::set<MonthIndex> pseudo;
    for (const auto& event : doc.events) {
      if (mega_months.count(event.month) == 0) pseudo.insert(event.month);
    }
    clusters = eventstudy::consolidate(
        std::vector<MonthIndex>(pseudo.begin(), pseudo.end()),
        config.consolidation_gap);
    for (auto& cluster : clusters) {
      for (const MonthIndex month : cluster.member_months) {
        for (const auto& event : doc.events) {
          if (event.month == month && event.records) {
            cluster.total_records += *event.records;
          }
        }
      }
    }
  } else {
    clusters = eventstudy::find_mega_events(doc.events, config.mega_threshold,
                                            config.consolidation_gap);
  }
  if (clusters.empty()) {
    ctx.warn(args.placebo ? "no pseudo-event months to test"
                          : "no mega events at this threshold");
  }

  io::StudyDocument study;
  study.threshold = config.mega_threshold;
  study.gap = config.consolidation_gap;
  study.pre_window = config.pre_window;
  study.post_window = config.post_window;
  study.placebo = args.placebo;
  study.events = clusters;
  study.results =
      eventstudy::lag_sweep(clusters, victims, config.lag_min, config.lag_max,
                            config.pre_window, config.post_window);
  for (const auto& result : study.results) {
    if (!result.diagnostic.empty()) {
      ctx.warn("lag " + std::to_string(result.lag) + ": " + result.diagnostic);
    }
    if (result.excluded_events > 0) {
      ctx.warn("lag " + std::to_string(result.lag) + ": " +
               std::to_string(result.excluded_events) +
               " events fell outside the victim series");
    }
  }

  ctx.write("study.json", io::to_json(study));
  if (global.plot) {
    try_plot(ctx, "pvalue_sweep.svg", [&] {
      chart::ChartSeries p_line{"one-sided p", {}};
      chart::ChartSeries effect{"mean delta", {}};
      for (const auto& result : study.results) {
        if (result.p_value) {
          p_line.points.emplace_back(static_cast<double>(result.lag),
                                     *result.p_value);
          effect.points.emplace_back(static_cast<double>(result.lag),
                                     result.mean_delta);
        }
      }
      chart::ChartOptions options;
      options.title = args.placebo ? "placebo sweep over discovery lags"
                                   : "significance by assumed discovery lag";
      options.x_label = "lag (months)";
      options.y_label = "one-sided p-value";
      options.x_as_months = false;
      return chart::emit_chart(chart::ChartKind::kPValueSweep,
                               {std::move(p_line), std::move(effect)},
                               options);
    });
  }
  ctx.finish();
  return 0;
}

int run_bounds(const GlobalArgs& global, const BoundsArgs& args) {
  PipelineConfig config = global.config;
  if (args.alpha) config.alpha = *args.alpha;
  if (args.window) config.post_window = *args.window;
  config.validate();
  RunContext ctx(global, config, "bounds");

  std::vector<std::pair<MonthIndex, double>> cases;
  for (const auto& spec : args.breaches) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("breach '" + spec +
                                  "' must look like YYYY-MM:RECORDS");
    }
    const MonthIndex t = parse_month(spec.substr(0, colon));
    if (!in_study_window(t)) {
      throw std::invalid_argument("breach month " + format_month(t) +
                                  " is outside the study calendar");
    }
    const double records =
        parse_double_strict(spec.substr(colon + 1), "record count");
    if (records <= 0.0) {
      throw std::invalid_argument("breach '" + spec +
                                  "' needs a positive record count");
    }
    cases.emplace_back(t, records);
  }

  const auto fit =
      from_file(args.fit, [&] { return io::fit_from_json(slurp(args.fit)); });
  ctx.note_input(args.fit);
  const auto rows = from_file(
      args.costs, [&] { return io::cost_rows_from_json(slurp(args.costs)); });
  ctx.note_input(args.costs);
  const auto S = socialcost::interpolate_social_cost(rows);

  std::map<MonthIndex, double> deltas;
  bool have_deltas = false;
  if (args.deltas) {
    deltas = load_month_map(ctx, *args.deltas);
    have_deltas = true;
  }
  if (args.study) {
    const auto study = from_file(
        args.study.value(),
        [&] { return io::study_from_json(slurp(*args.study)); });
    ctx.note_input(*args.study);
    const eventstudy::EventStudyResult* picked = nullptr;
    if (args.lag) {
      for (const auto& result : study.results) {
        if (result.lag == *args.lag) picked = &result;
      }
      if (!picked) {
        throw std::invalid_argument("study has no lag " +
                                    std::to_string(*args.lag));
      }
    } else {
      for (const auto& result : study.results) {
        if (result.p_value && (!picked || *result.p_value < *picked->p_value)) {
          picked = &result;
        }
      }
      if (!picked) {
        throw std::invalid_argument(
            "study has no testable lag to take deltas from");
      }
    }
    if (picked->event_months.size() != picked->deltas.size() ||
        picked->deltas.empty()) {
      throw std::invalid_argument("study lag " + std::to_string(picked->lag) +
                                  " carries no usable deltas");
    }
    for (std::size_t i = 0; i < picked->deltas.size(); ++i) {
      deltas.emplace(picked->event_months[i], picked->deltas[i]);
    }
    have_deltas = true;
  } else if (args.lag) {
    throw std::invalid_argument("--lag needs --study");
  }

  std::map<MonthIndex, double> settlements;
  if (args.settlements) settlements = load_month_map(ctx, *args.settlements);

  const auto doc = compute_bounds(
      ctx, cases, fit, rows, S, have_deltas ? &deltas : nullptr,
      args.settlements ? &settlements : nullptr, config.alpha,
      config.post_window);
  ctx.write("bounds.json", io::to_json(doc));
  ctx.finish();
  return 0;
}

int run_saturate(const GlobalArgs& global, const SaturateArgs& args) {
  PipelineConfig config = global.config;
  if (args.theta) config.theta = *args.theta;
  if (args.gamma0) config.gamma0 = *args.gamma0;
  if (args.market_scale) config.market_scale = *args.market_scale;
  config.validate();
  RunContext ctx(global, config, "saturate");

  auto records_in = open_input(args.records);
  const auto records =
      from_file(args.records, [&] { return io::read_series_csv(records_in); });
  ctx.note_input(args.records);
  auto population_in = open_input(args.population);
  const auto by_year = from_file(
      args.population, [&] { return load_population_csv(population_in); });
  ctx.note_input(args.population);

  const auto population =
      projection::annual_to_monthly(by_year, records.start(), records.last());
  const projection::SaturationParams params{config.theta, config.gamma0,
                                            config.market_scale};
  const auto run = projection::run_saturation(records, population, params);

  ctx.write("saturation.csv", saturation_csv(run));
  if (global.plot) {
    try_plot(ctx, "saturation.svg", [&] {
      chart::ChartOptions options;
      options.title = "identity-market saturation";
      options.x_label = "month";
      options.y_label = "share of addressable population";
      return chart::emit_chart(chart::ChartKind::kOverlay,
                               {chart_points(run.saturation, "saturation")},
                               options);
    });
  }
  ctx.finish();
  return 0;
}

int run_report(const GlobalArgs& global, const ReportArgs& args) {
  PipelineConfig config = global.config;
  config.validate();
  RunContext ctx(global, config, "report");

  const auto inputs = load_cost_inputs(ctx, args.survey, args.wages, args.cpi,
                                       args.services, false);
  const auto rows = build_cost_rows(
      inputs, socialcost::DenominatorMode::kWeightedVictims);
  const auto S = socialcost::interpolate_social_cost(rows);

  const auto fit =
      from_file(args.fit, [&] { return io::fit_from_json(slurp(args.fit)); });
  ctx.note_input(args.fit);
  const auto case_map = load_month_map(ctx, args.cases);
  std::vector<std::pair<MonthIndex, double>> cases(case_map.begin(),
                                                   case_map.end());
  for (const auto& [t, records] : cases) {
    if (records <= 0.0) {
      throw std::invalid_argument("case " + format_month(t) +
                                  " needs a positive record count");
    }
  }

  std::map<MonthIndex, double> deltas;
  if (args.deltas) deltas = load_month_map(ctx, *args.deltas);
  std::map<MonthIndex, double> settlements;
  if (args.settlements) settlements = load_month_map(ctx, *args.settlements);

  const auto bounds = compute_bounds(
      ctx, cases, fit, rows, S, args.deltas ? &deltas : nullptr,
      args.settlements ? &settlements : nullptr, config.alpha,
      config.post_window);

  std::ostringstream table;
  io::write_cost_table_csv(table, rows);
  ctx.write("cost_table.csv", table.str());
  ctx.write("cost_table.json", io::cost_rows_to_json(rows));
  ctx.write("social_cost.csv", series_csv(S));
  ctx.write("bounds.json", io::to_json(bounds));
  ctx.write("report.txt", report_text(rows, bounds));

  if (global.plot) {
    try_plot(ctx, "cost_evolution.svg", [&] {
      chart::ChartOptions options;
      options.title = "per-victim social cost";
      options.x_label = "month";
      options.y_label = "2021 dollars";
      return chart::emit_chart(chart::ChartKind::kCostEvolution,
                               {chart_points(S, "per-victim cost")}, options);
    });
  }
  ctx.finish();
  return 0;
}

}  // namespace breachcost::cli
