#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "breachcost/config.hpp"
#include "commands.hpp"

namespace {

using breachcost::cli::GlobalArgs;

int dispatch(const CLI::App& app, const GlobalArgs& global,
             const breachcost::cli::IngestArgs& ingest,
             const breachcost::cli::AugmentArgs& augment,
             const breachcost::cli::CostTableArgs& cost_table,
             const breachcost::cli::InterpolateArgs& interpolate,
             const breachcost::cli::ConversionArgs& conversion,
             const breachcost::cli::EventStudyArgs& event_study,
             const breachcost::cli::BoundsArgs& bounds,
             const breachcost::cli::SaturateArgs& saturate,
             const breachcost::cli::ReportArgs& report) {
  using namespace breachcost::cli;
  if (app.got_subcommand("ingest")) return run_ingest(global, ingest);
  if (app.got_subcommand("augment")) return run_augment(global, augment);
  if (app.got_subcommand("cost-table")) return run_cost_table(global, cost_table);
  if (app.got_subcommand("interpolate")) return run_interpolate(global, interpolate);
  if (app.got_subcommand("conversion")) return run_conversion(global, conversion);
  if (app.got_subcommand("event-study")) return run_event_study(global, event_study);
  if (app.got_subcommand("bounds")) return run_bounds(global, bounds);
  if (app.got_subcommand("saturate")) return run_saturate(global, saturate);
  if (app.got_subcommand("report")) return run_report(global, report);
  throw std::logic_error("no subcommand dispatched");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social-cost estimation pipeline for corporate data breaches"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: ") + e.what() + "\n";
  });

  GlobalArgs global;
  app.add_option("--config", global.config_path,
                 "pipeline parameter file (key = value lines)");
  app.add_option("--out", global.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--plot", global.plot, "emit SVG charts next to the data files");
  app.add_option("--seed", global.seed,
                 "seed reserved for stochastic extensions");

  breachcost::cli::IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "parse breach rows, dedup groups, fold in portal and filing sources");
  ingest_cmd->fallthrough();
  ingest_cmd->add_option("--breaches", ingest.breaches, "chronology CSV")
      ->required();
  ingest_cmd->add_option("--hhs", ingest.hhs, "healthcare portal CSV");
  ingest_cmd->add_option("--filings", ingest.filings, "state filings CSV");
  ingest_cmd
      ->add_option("--match-gap", ingest.match_gap,
                   "max months between sightings of one incident")
      ->capture_default_str();

  breachcost::cli::AugmentArgs augment;
  auto* augment_cmd = app.add_subcommand(
      "augment", "estimate and impute record counts for undisclosed events");
  augment_cmd->fallthrough();
  augment_cmd->add_option("--events", augment.events, "events JSON from ingest")
      ->required();
  augment_cmd->add_flag("--with-intercept", augment.with_intercept,
                        "fit the state-national regression with an intercept");

  breachcost::cli::CostTableArgs cost_table;
  auto* cost_cmd = app.add_subcommand(
      "cost-table", "per-victim cost components by survey year, in 2021 dollars");
  cost_cmd->fallthrough();
  cost_cmd->add_option("--survey", cost_table.survey, "survey wave aggregates CSV")
      ->required();
  cost_cmd->add_option("--wages", cost_table.wages, "hourly wage CSV")
      ->required();
  cost_cmd->add_option("--cpi", cost_table.cpi, "annual CPI CSV");
  cost_cmd->add_option("--services", cost_table.services,
                       "service unit-cost config");
  cost_cmd->add_flag("--prose-services", cost_table.prose_services,
                     "use the rounded base-year service preset");
  cost_cmd
      ->add_option("--denominator", cost_table.denominator,
                   "weighted or unweighted")
      ->capture_default_str();
  cost_cmd
      ->add_option("--anchor-month", cost_table.anchor_month,
                   "month each survey year's cost is anchored to")
      ->capture_default_str();

  breachcost::cli::InterpolateArgs interpolate;
  auto* interp_cmd = app.add_subcommand(
      "interpolate", "log-linear monthly series through sparse anchors");
  interp_cmd->fallthrough();
  interp_cmd->add_option("--anchors", interpolate.anchors, "month,value CSV")
      ->required();
  interp_cmd->add_option("--from", interpolate.from, "first output month");
  interp_cmd->add_option("--to", interpolate.to, "last output month");

  breachcost::cli::ConversionArgs conversion;
  auto* conv_cmd = app.add_subcommand(
      "conversion", "exposure pool, conversion rate and its log-quadratic fit");
  conv_cmd->fallthrough();
  conv_cmd->add_option("--events", conversion.events, "augmented events JSON")
      ->required();
  conv_cmd->add_option("--victims", conversion.victims, "monthly victim CSV")
      ->required();
  conv_cmd
      ->add_option("--window", conversion.window,
                   "moving-average window before the fit")
      ->capture_default_str();
  conv_cmd->add_option("--alpha", conversion.alpha,
                       "override the pool carry-over");

  breachcost::cli::EventStudyArgs event_study;
  auto* study_cmd = app.add_subcommand(
      "event-study", "Wilcoxon test of victim rates around mega breaches");
  study_cmd->fallthrough();
  study_cmd->add_option("--events", event_study.events, "events JSON")
      ->required();
  study_cmd->add_option("--victims", event_study.victims, "monthly victim CSV")
      ->required();
  study_cmd->add_flag("--placebo", event_study.placebo,
                      "test non-mega breach months instead");
  study_cmd->add_option("--threshold", event_study.threshold,
                        "records that make a breach mega");
  study_cmd->add_option("--gap", event_study.gap,
                        "months merging nearby mega months");
  study_cmd->add_option("--pre", event_study.pre, "pre-window months");
  study_cmd->add_option("--post", event_study.post, "post-window months");
  study_cmd->add_option("--lags", event_study.lags, "lag sweep, lo..hi");

  breachcost::cli::BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "lower and upper social-cost bounds for named breaches");
  bounds_cmd->fallthrough();
  bounds_cmd
      ->add_option("--breach", bounds.breaches,
                   "breach spec YYYY-MM:RECORDS, repeatable")
      ->required();
  bounds_cmd->add_option("--fit", bounds.fit, "conversion fit JSON")->required();
  bounds_cmd->add_option("--costs", bounds.costs, "cost table JSON")
      ->required();
  bounds_cmd->add_option("--deltas", bounds.deltas,
                         "post-event victim deltas, {\"YYYY-MM\": value}");
  bounds_cmd->add_option("--study", bounds.study,
                         "study JSON to draw deltas from");
  bounds_cmd->add_option("--lag", bounds.lag,
                         "study lag to use (default: smallest p)");
  bounds_cmd->add_option("--settlements", bounds.settlements,
                         "settlement totals, {\"YYYY-MM\": value}");
  bounds_cmd->add_option("--alpha", bounds.alpha,
                         "override the pool carry-over");
  bounds_cmd->add_option("--window", bounds.window,
                         "months the lower-bound delta persists");

  breachcost::cli::SaturateArgs saturate;
  auto* sat_cmd = app.add_subcommand(
      "saturate", "unique-victim saturation of the addressable population");
  sat_cmd->fallthrough();
  sat_cmd->add_option("--records", saturate.records, "monthly records CSV")
      ->required();
  sat_cmd->add_option("--population", saturate.population,
                      "year,population CSV")
      ->required();
  sat_cmd->add_option("--theta", saturate.theta,
                      "identities exposed per record");
  sat_cmd->add_option("--gamma0", saturate.gamma0,
                      "reachable share of exposed identities");
  sat_cmd->add_option("--market-scale", saturate.market_scale,
                      "addressable-population multiplier");

  breachcost::cli::ReportArgs report;
  auto* report_cmd = app.add_subcommand(
      "report", "cost table, interpolated cost curve and case-study bounds");
  report_cmd->fallthrough();
  report_cmd->add_option("--survey", report.survey, "survey wave aggregates CSV")
      ->required();
  report_cmd->add_option("--wages", report.wages, "hourly wage CSV")
      ->required();
  report_cmd->add_option("--fit", report.fit, "conversion fit JSON")
      ->required();
  report_cmd
      ->add_option("--cases", report.cases,
                   "breach sizes to bound, {\"YYYY-MM\": records}")
      ->required();
  report_cmd->add_option("--cpi", report.cpi, "annual CPI CSV");
  report_cmd->add_option("--services", report.services,
                         "service unit-cost config");
  report_cmd->add_option("--deltas", report.deltas,
                         "post-event victim deltas, {\"YYYY-MM\": value}");
  report_cmd->add_option("--settlements", report.settlements,
                         "settlement totals, {\"YYYY-MM\": value}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    global.config = global.config_path
                        ? breachcost::load_config(*global.config_path)
                        : breachcost::PipelineConfig{};
    return dispatch(app, global, ingest, augment, cost_table, interpolate,
                    conversion, event_study, bounds, saturate, report);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  } catch (...) {
    std::fprintf(stderr, "internal error: unknown failure\n");
    return 2;
  }
}
