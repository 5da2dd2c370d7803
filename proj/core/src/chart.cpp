#include "breachcost/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "breachcost/calendar.hpp"

namespace breachcost::chart {

ChartKind chart_kind_from_string(const std::string& label) {
  if (label == "overlay") return ChartKind::kOverlay;
  if (label == "conversion") return ChartKind::kConversion;
  if (label == "pvalue-sweep") return ChartKind::kPValueSweep;
  if (label == "cost-evolution") return ChartKind::kCostEvolution;
  throw std::invalid_argument(
      "unknown chart kind '" + label +
      "' (valid: overlay, conversion, pvalue-sweep, cost-evolution)");
}

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 72.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 58.0;

const char* kPalette[] = {"#1f6fb4", "#2e9e4f", "#c0392b", "#de8f05",
                          "#7b5ea7", "#4f6d7a"};

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string fmt_tick(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

std::string escape_text(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void seed(double v) {
    lo = v;
    hi = v;
  }
  void pad() {
    if (hi == lo) {
      hi += 1.0;
      lo -= 1.0;
    }
  }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / target)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * m) <= target) {
      step *= m;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9;
       v += step) {
    ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return ticks;
}

}  // namespace

std::string emit_chart(ChartKind kind, const std::vector<ChartSeries>& series,
                       const ChartOptions& options) {
  if (series.empty()) {
    throw std::invalid_argument("chart has no series");
  }
  for (const auto& s : series) {
    if (s.points.size() < 2) {
      throw std::invalid_argument("series '" + s.label +
                                  "' has fewer than 2 points");
    }
  }

  const bool sweep = kind == ChartKind::kPValueSweep;
  const ChartSeries& line = series.front();
  const ChartSeries* bars =
      sweep && series.size() > 1 ? &series[1] : nullptr;

  Range x_range, y_range, bar_range;
  x_range.seed(line.points.front().first);
  y_range.seed(line.points.front().second);
  const std::size_t line_count = sweep ? 1 : series.size();
  for (std::size_t i = 0; i < line_count; ++i) {
    for (const auto& [x, y] : series[i].points) {
      x_range.include(x);
      y_range.include(y);
    }
  }
  std::optional<double> reference = options.reference_y;
  if (sweep && !reference) reference = 0.05;
  if (reference) y_range.include(*reference);
  if (sweep) y_range.include(0.0);
  x_range.pad();
  y_range.pad();
  if (bars) {
    bar_range.seed(0.0);
    for (const auto& [x, y] : bars->points) {
      x_range.include(x);
      bar_range.include(y);
    }
    bar_range.pad();
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) {
    return kLeft + (x - x_range.lo) / (x_range.hi - x_range.lo) * plot_w;
  };
  const auto sy = [&](double y) {
    return kTop + plot_h -
           (y - y_range.lo) / (y_range.hi - y_range.lo) * plot_h;
  };
  const auto sy_bar = [&](double y) {
    return kTop + plot_h -
           (y - bar_range.lo) / (bar_range.hi - bar_range.lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << kWidth / 2
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << escape_text(options.title) << "</text>\n";
  }

  // Gridlines and axis ticks.
  for (double tick : nice_ticks(y_range.lo, y_range.hi)) {
    const double y = sy(tick);
    svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt_tick(tick) << "</text>\n";
  }
  for (double tick : nice_ticks(x_range.lo, x_range.hi, 8)) {
    const double x = sx(tick);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + plot_h)
        << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(kTop + plot_h + 5)
        << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    std::string label;
    if (options.x_as_months) {
      const long rounded = std::lround(tick);
      label = rounded >= 0 ? format_month(static_cast<MonthIndex>(rounded))
                           : fmt_tick(tick);
    } else {
      label = fmt_tick(tick);
    }
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << label << "</text>\n";
  }

  // Bars first so the p-value line stays on top.
  if (bars) {
    const double spacing =
        plot_w / static_cast<double>(bars->points.size());
    const double half = spacing * 0.3;
    const double base = sy_bar(std::max(0.0, bar_range.lo));
    for (const auto& [x, y] : bars->points) {
      const double cx = sx(x);
      const double top = sy_bar(y);
      svg << "<rect x=\"" << fmt(cx - half) << "\" y=\""
          << fmt(std::min(top, base)) << "\" width=\"" << fmt(2 * half)
          << "\" height=\"" << fmt(std::abs(base - top))
          << "\" fill=\"" << kPalette[1] << "\" fill-opacity=\"0.55\"/>\n";
    }
    for (double tick : nice_ticks(bar_range.lo, bar_range.hi)) {
      svg << "<text x=\"" << fmt(kLeft + plot_w + 8) << "\" y=\""
          << fmt(sy_bar(tick) + 4)
          << "\" text-anchor=\"start\" font-family=\"sans-serif\" "
             "font-size=\"11\" fill=\""
          << kPalette[1] << "\">" << fmt_tick(tick) << "</text>\n";
    }
  }

  if (reference) {
    const double y = sy(*reference);
    svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#c0392b\" stroke-width=\"1\" "
           "stroke-dasharray=\"6 4\"/>\n";
    svg << "<text x=\"" << fmt(kLeft + plot_w - 4) << "\" y=\"" << fmt(y - 5)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"#c0392b\">"
        << fmt_tick(*reference) << "</text>\n";
  }

  for (std::size_t i = 0; i < line_count; ++i) {
    svg << "<polyline fill=\"none\" stroke=\""
        << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : series[i].points) {
      svg << fmt(sx(x)) << "," << fmt(sy(y)) << " ";
    }
    svg << "\"/>\n";
  }

  // Legend.
  double legend_y = kTop + 6;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label.empty()) continue;
    const char* color =
        (sweep && i == 1) ? kPalette[1] : kPalette[i % std::size(kPalette)];
    svg << "<rect x=\"" << fmt(kLeft + 10) << "\" y=\"" << fmt(legend_y)
        << "\" width=\"14\" height=\"4\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fmt(kLeft + 30) << "\" y=\"" << fmt(legend_y + 5)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_text(series[i].label) << "</text>\n";
    legend_y += 18;
  }

  // Axis frame and labels.
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  if (!options.x_label.empty()) {
    svg << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\""
        << fmt(kHeight - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">"
        << escape_text(options.x_label) << "</text>\n";
  }
  if (!options.y_label.empty()) {
    svg << "<text x=\"18\" y=\"" << fmt(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 "
        << fmt(kTop + plot_h / 2) << ")\">" << escape_text(options.y_label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace breachcost::chart
