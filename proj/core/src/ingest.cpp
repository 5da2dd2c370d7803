#include "breachcost/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "breachcost/csv.hpp"

namespace breachcost::ingest {

namespace {

const std::map<std::string, BreachCategory>& category_labels() {
  static const std::map<std::string, BreachCategory> labels = {
      {"payment-card", BreachCategory::kPaymentCard},
      {"external-cyber", BreachCategory::kExternalCyber},
      {"insider", BreachCategory::kInsider},
      {"physical-documents", BreachCategory::kPhysicalDocuments},
      {"portable-device", BreachCategory::kPortableDevice},
      {"stationary-device", BreachCategory::kStationaryDevice},
      {"unintended-disclosure", BreachCategory::kUnintendedDisclosure},
      {"unknown", BreachCategory::kUnknown},
  };
  return labels;
}

}  // namespace

const char* to_string(BreachCategory category) {
  for (const auto& [label, value] : category_labels()) {
    if (value == category) return label.c_str();
  }
  throw std::invalid_argument("unknown breach category");
}

BreachCategory category_from_string(const std::string& label) {
  const auto& labels = category_labels();
  const auto it = labels.find(label);
  if (it == labels.end()) {
    std::string valid;
    for (const auto& [known, _] : labels) {
      if (!valid.empty()) valid += ", ";
      valid += known;
    }
    throw std::invalid_argument("unknown category '" + label +
                                "' (valid: " + valid + ")");
  }
  return it->second;
}

const std::vector<BreachCategory>& all_categories() {
  static const std::vector<BreachCategory> all = [] {
    std::vector<BreachCategory> v;
    for (const auto& [_, value] : category_labels()) v.push_back(value);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return all;
}

const char* to_string(BreachSource source) {
  switch (source) {
    case BreachSource::kChronology:
      return "chronology";
    case BreachSource::kHealthcarePortal:
      return "healthcare-portal";
    case BreachSource::kStateFiling:
      return "state-filing";
  }
  throw std::invalid_argument("unknown breach source");
}

BreachSource source_from_string(const std::string& label) {
  if (label == "chronology") return BreachSource::kChronology;
  if (label == "healthcare-portal") return BreachSource::kHealthcarePortal;
  if (label == "state-filing") return BreachSource::kStateFiling;
  throw std::invalid_argument(
      "unknown source '" + label +
      "' (valid: chronology, healthcare-portal, state-filing)");
}

const char* to_string(RecordBasis basis) {
  switch (basis) {
    case RecordBasis::kDisclosed:
      return "disclosed";
    case RecordBasis::kUndisclosed:
      return "undisclosed";
    case RecordBasis::kEstimated:
      return "estimated";
    case RecordBasis::kImputed:
      return "imputed";
  }
  throw std::invalid_argument("unknown record basis");
}

RecordBasis basis_from_string(const std::string& label) {
  if (label == "disclosed") return RecordBasis::kDisclosed;
  if (label == "undisclosed") return RecordBasis::kUndisclosed;
  if (label == "estimated") return RecordBasis::kEstimated;
  if (label == "imputed") return RecordBasis::kImputed;
  throw std::invalid_argument("unknown record basis '" + label + "'");
}

bool has_disclosed_count(const BreachEvent& event) {
  return event.records.has_value();
}

const char* to_string(FilingState state) {
  return state == FilingState::kME ? "ME" : "NH";
}

FilingState filing_state_from_string(const std::string& label) {
  if (label == "ME") return FilingState::kME;
  if (label == "NH") return FilingState::kNH;
  throw std::invalid_argument("unknown state '" + label + "' (valid: ME, NH)");
}

namespace {

long long parse_count(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty count");
  }
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size()) {
    throw std::invalid_argument("bad count '" + text + "'");
  }
  if (value < 0) {
    throw std::invalid_argument("negative count " + text);
  }
  return value;
}

// Returns nullopt for rows whose month parses but falls outside the study
// calendar; throws for malformed text.
std::optional<MonthIndex> study_month(const std::string& text) {
  const YearMonth ym = parse_year_month(text);
  if (ym.year < kStudyStartYear) return std::nullopt;
  const MonthIndex t = month_index(ym);
  if (!in_study_window(t)) return std::nullopt;
  return t;
}

}  // namespace

ParsedBreaches parse_breaches(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) {
    throw CsvParseError(1, "", "empty input: missing header row");
  }
  const auto cols = resolve_columns(
      *header, {"report_id", "group_id", "org_name", "month", "records",
                "category", "source"});

  ParsedBreaches out;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "",
                          "expected " + std::to_string(header->size()) +
                              " fields, got " + std::to_string(row->size()));
    }
    const auto field = [&](std::size_t i) -> const std::string& {
      return (*row)[cols[i]];
    };
    BreachRecord record;
    record.report_id = field(0);
    record.group_id = field(1);
    record.org_name = field(2);
    try {
      const auto month = study_month(field(3));
      if (!month) {
        out.skipped.push_back(
            {line, "month " + field(3) + " outside the study calendar"});
        continue;
      }
      record.month = *month;
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "month", err.what());
    }
    try {
      if (!field(4).empty()) {
        const long long count = parse_count(field(4));
        if (count > 0) record.records = static_cast<double>(count);
      }
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "records", err.what());
    }
    try {
      record.category = category_from_string(field(5));
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "category", err.what());
    }
    try {
      record.source = source_from_string(field(6));
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "source", err.what());
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

ParsedFilings parse_filings(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) {
    throw CsvParseError(1, "", "empty input: missing header row");
  }
  const auto cols = resolve_columns(
      *header, {"org_name", "month", "state_residents", "state"});

  ParsedFilings out;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header->size()) {
      throw CsvParseError(line, "",
                          "expected " + std::to_string(header->size()) +
                              " fields, got " + std::to_string(row->size()));
    }
    const auto field = [&](std::size_t i) -> const std::string& {
      return (*row)[cols[i]];
    };
    StateFiling filing;
    filing.org_name = field(0);
    try {
      const auto month = study_month(field(1));
      if (!month) {
        out.skipped.push_back(
            {line, "month " + field(1) + " outside the study calendar"});
        continue;
      }
      filing.month = *month;
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "month", err.what());
    }
    try {
      filing.state_residents = parse_count(field(2));
      if (filing.state_residents == 0) {
        throw std::invalid_argument("state_residents must be positive");
      }
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "state_residents", err.what());
    }
    try {
      filing.state = filing_state_from_string(field(3));
    } catch (const std::invalid_argument& err) {
      throw CsvParseError(line, "state", err.what());
    }
    out.filings.push_back(std::move(filing));
  }
  return out;
}

std::string normalize_org_name(std::string_view name) {
  std::string lowered;
  lowered.reserve(name.size());
  for (char ch : name) {
    const unsigned char u = static_cast<unsigned char>(ch);
    if (std::isalnum(u)) {
      lowered.push_back(static_cast<char>(std::tolower(u)));
    } else {
      lowered.push_back(' ');
    }
  }

  std::istringstream words(lowered);
  std::vector<std::string> tokens;
  std::string token;
  while (words >> token) tokens.push_back(token);

  static const std::set<std::string> suffixes = {
      "inc",  "incorporated", "llc",     "ltd",
      "corp", "corporation",  "company", "co"};
  while (tokens.size() > 1 && suffixes.count(tokens.back())) {
    tokens.pop_back();
  }

  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

IdentityMatcher default_matcher(int max_month_gap) {
  return [max_month_gap](std::string_view org_a, MonthIndex month_a,
                         std::string_view org_b, MonthIndex month_b) {
    if (std::abs(month_a - month_b) > max_month_gap) return false;
    return normalize_org_name(org_a) == normalize_org_name(org_b);
  };
}

std::vector<BreachEvent> dedup_by_group(
    const std::vector<BreachRecord>& records) {
  std::vector<BreachEvent> events;
  std::map<std::string, std::size_t> group_event;  // group_id -> index

  for (const auto& record : records) {
    if (record.group_id.empty()) {
      BreachEvent event;
      event.org_name = record.org_name;
      event.month = record.month;
      event.records = record.records;
      event.category = record.category;
      event.source = record.source;
      event.basis = record.records ? RecordBasis::kDisclosed
                                   : RecordBasis::kUndisclosed;
      events.push_back(std::move(event));
      continue;
    }
    const auto [it, inserted] =
        group_event.try_emplace(record.group_id, events.size());
    if (inserted) {
      BreachEvent event;
      event.org_name = record.org_name;
      event.group_id = record.group_id;
      event.month = record.month;
      event.records = record.records;
      event.category = record.category;
      event.source = record.source;
      event.basis = record.records ? RecordBasis::kDisclosed
                                   : RecordBasis::kUndisclosed;
      events.push_back(std::move(event));
      continue;
    }
    BreachEvent& event = events[it->second];
    event.month = std::min(event.month, record.month);
    if (record.records &&
        (!event.records || *record.records > *event.records)) {
      event.records = record.records;
      event.basis = RecordBasis::kDisclosed;
      event.org_name = record.org_name;
      event.category = record.category;
      event.source = record.source;
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const BreachEvent& a, const BreachEvent& b) {
                     if (a.month != b.month) return a.month < b.month;
                     if (a.org_name != b.org_name) return a.org_name < b.org_name;
                     return a.group_id < b.group_id;
                   });
  return events;
}

namespace {

// Index of the best base match: smallest month distance, earliest index on
// ties; nullopt when nothing matches.
std::optional<std::size_t> find_match(const std::vector<BreachEvent>& base,
                                      std::string_view org, MonthIndex month,
                                      const IdentityMatcher& matcher) {
  std::optional<std::size_t> best;
  int best_gap = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!matcher(base[i].org_name, base[i].month, org, month)) continue;
    const int gap = std::abs(base[i].month - month);
    if (!best || gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

std::vector<BreachEvent> merge_hhs(std::vector<BreachEvent> base,
                                   const std::vector<BreachEvent>& hhs,
                                   const IdentityMatcher& matcher) {
  for (const auto& incoming : hhs) {
    const auto match =
        find_match(base, incoming.org_name, incoming.month, matcher);
    if (!match) {
      base.push_back(incoming);
      continue;
    }
    BreachEvent& kept = base[*match];
    if (incoming.records &&
        (!kept.records || *incoming.records > *kept.records)) {
      kept.records = incoming.records;
      kept.basis = RecordBasis::kDisclosed;
    }
  }
  return base;
}

const std::vector<std::string>& default_stoplist() {
  static const std::vector<std::string> stoplist = {
      "town of", "plumbing", "electric", "dealership", "restaurant"};
  return stoplist;
}

std::vector<StateFiling> keyword_filter(
    const std::vector<StateFiling>& filings,
    const std::vector<std::string>& stoplist) {
  if (stoplist.empty()) {
    throw std::invalid_argument("keyword_filter: empty stoplist");
  }
  std::vector<StateFiling> kept;
  kept.reserve(filings.size());
  for (const auto& filing : filings) {
    std::string lowered;
    lowered.reserve(filing.org_name.size());
    for (char ch : filing.org_name) {
      lowered.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    const bool hit = std::any_of(
        stoplist.begin(), stoplist.end(), [&lowered](const std::string& word) {
          return lowered.find(word) != std::string::npos;
        });
    if (!hit) kept.push_back(filing);
  }
  return kept;
}

StateMergeResult merge_state_filings(std::vector<BreachEvent>& base,
                                     const std::vector<StateFiling>& filings,
                                     const IdentityMatcher& matcher) {
  // Cross-state duplicates first: the same incident filed in both ME and NH
  // keeps the higher resident count.
  std::vector<StateFiling> collapsed;
  for (const auto& filing : filings) {
    bool merged = false;
    for (auto& kept : collapsed) {
      if (matcher(kept.org_name, kept.month, filing.org_name, filing.month)) {
        if (filing.state_residents > kept.state_residents) kept = filing;
        merged = true;
        break;
      }
    }
    if (!merged) collapsed.push_back(filing);
  }

  StateMergeResult result;
  for (const auto& filing : collapsed) {
    const auto match =
        find_match(base, filing.org_name, filing.month, matcher);
    if (!match) {
      BreachEvent addition;
      addition.org_name = filing.org_name;
      addition.month = filing.month;
      addition.source = BreachSource::kStateFiling;
      addition.basis = RecordBasis::kUndisclosed;
      addition.state_residents = filing.state_residents;
      result.additions.push_back(std::move(addition));
      continue;
    }
    BreachEvent& event = base[*match];
    if (event.records) {
      if (*event.records >=
          5.0 * static_cast<double>(filing.state_residents)) {
        result.pairs.push_back({filing.state_residents, *event.records});
      } else {
        ++result.filtered_pairs;
      }
    } else {
      if (!event.state_residents ||
          filing.state_residents > *event.state_residents) {
        event.state_residents = filing.state_residents;
      }
      result.pending.push_back(*match);
    }
  }
  std::sort(result.pending.begin(), result.pending.end());
  result.pending.erase(
      std::unique(result.pending.begin(), result.pending.end()),
      result.pending.end());
  return result;
}

MonthIndex quarter_to_month(int year, int quarter) {
  if (quarter < 1 || quarter > 4) {
    throw std::domain_error("quarter " + std::to_string(quarter) +
                            " outside 1..4");
  }
  static constexpr int kMidMonth[4] = {2, 5, 8, 11};
  return month_index(year, kMidMonth[quarter - 1]);
}

}  // namespace breachcost::ingest
