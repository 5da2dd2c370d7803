#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace breachcost::chart {

enum class ChartKind { kOverlay, kConversion, kPValueSweep, kCostEvolution };
ChartKind chart_kind_from_string(const std::string& label);

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), x ascending
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool x_as_months = true;  // tick labels rendered as YYYY-MM
  std::optional<double> reference_y;
};

// Renders a self-contained SVG document (no external assets). Overlay,
// conversion and cost-evolution charts draw one polyline per series; the
// p-value sweep draws the first series as a line, an optional second
// series as bars on a right-hand axis, and a dashed 0.05 reference rule.
// Empty inputs and single-point series are rejected.
std::string emit_chart(ChartKind kind, const std::vector<ChartSeries>& series,
                       const ChartOptions& options = {});

}  // namespace breachcost::chart
