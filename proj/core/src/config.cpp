#include "breachcost/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace breachcost {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size() || !std::isfinite(parsed)) {
    throw std::invalid_argument("config key '" + key + "': bad number '" +
                                value + "'");
  }
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  const double parsed = parse_double(key, value);
  const int as_int = static_cast<int>(parsed);
  if (static_cast<double>(as_int) != parsed) {
    throw std::invalid_argument("config key '" + key +
                                "': expected an integer, got '" + value + "'");
  }
  return as_int;
}

// "lo..hi"
void parse_lag_range(const std::string& value, int& lo, int& hi) {
  const auto sep = value.find("..");
  if (sep == std::string::npos) {
    throw std::invalid_argument("config key 'lags': expected 'lo..hi', got '" +
                                value + "'");
  }
  lo = parse_int("lags", trim(value.substr(0, sep)));
  hi = parse_int("lags", trim(value.substr(sep + 2)));
}

}  // namespace

void PipelineConfig::validate() const {
  const auto bad = [](const std::string& what) {
    throw std::domain_error("config: " + what);
  };
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha must lie in (0, 1)");
  if (!(theta > 0.0)) bad("theta must be positive");
  if (!(gamma0 > 0.0 && gamma0 <= 1.0)) bad("gamma0 must lie in (0, 1]");
  if (!(market_scale > 0.0)) bad("Y must be positive");
  if (!(mega_threshold > 0.0)) bad("mega_threshold must be positive");
  if (pre_window < 1) bad("pre_window must be at least 1");
  if (post_window < 1) bad("post_window must be at least 1");
  if (lag_min < 0) bad("lags must start at 0 or later");
  if (lag_max < lag_min) bad("lag range is empty");
  if (consolidation_gap < 0) bad("consolidation_gap must be non-negative");
  if (baseline_years < 1) bad("baseline_T_years must be at least 1");
}

PipelineConfig parse_config(std::istream& in, const std::string& origin) {
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "alpha") {
        config.alpha = parse_double(key, value);
      } else if (key == "theta") {
        config.theta = parse_double(key, value);
      } else if (key == "gamma0") {
        config.gamma0 = parse_double(key, value);
      } else if (key == "Y") {
        config.market_scale = parse_double(key, value);
      } else if (key == "mega_threshold") {
        config.mega_threshold = parse_double(key, value);
      } else if (key == "pre_window") {
        config.pre_window = parse_int(key, value);
      } else if (key == "post_window") {
        config.post_window = parse_int(key, value);
      } else if (key == "lags") {
        parse_lag_range(value, config.lag_min, config.lag_max);
      } else if (key == "consolidation_gap") {
        config.consolidation_gap = parse_int(key, value);
      } else if (key == "baseline_T_years") {
        config.baseline_years = parse_int(key, value);
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": " + err.what());
    }
  }
  config.validate();
  return config;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  return parse_config(in, path);
}

}  // namespace breachcost
