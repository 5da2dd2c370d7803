#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "breachcost/calendar.hpp"

namespace breachcost::ingest {

enum class BreachCategory {
  kPaymentCard,
  kExternalCyber,
  kInsider,
  kPhysicalDocuments,
  kPortableDevice,
  kStationaryDevice,
  kUnintendedDisclosure,
  kUnknown,
};
inline constexpr int kCategoryCount = 8;

const char* to_string(BreachCategory category);
BreachCategory category_from_string(const std::string& label);
const std::vector<BreachCategory>& all_categories();

enum class BreachSource { kChronology, kHealthcarePortal, kStateFiling };
const char* to_string(BreachSource source);
BreachSource source_from_string(const std::string& label);

// Where an event's record count came from. kEstimated marks counts
// extrapolated from state-resident filings, kImputed marks category-median
// fills; both are "imputed" in the loose sense but are kept apart so audits
// can count them separately.
enum class RecordBasis { kDisclosed, kUndisclosed, kEstimated, kImputed };
const char* to_string(RecordBasis basis);
RecordBasis basis_from_string(const std::string& label);

struct BreachRecord {
  std::string report_id;
  std::string group_id;  // empty = ungrouped
  std::string org_name;
  MonthIndex month = 0;
  std::optional<double> records;  // absent = undisclosed, never 0
  BreachCategory category = BreachCategory::kUnknown;
  BreachSource source = BreachSource::kChronology;
};

struct BreachEvent {
  std::string org_name;
  std::string group_id;
  MonthIndex month = 0;
  std::optional<double> records;
  BreachCategory category = BreachCategory::kUnknown;
  BreachSource source = BreachSource::kChronology;
  RecordBasis basis = RecordBasis::kUndisclosed;
  // Residents reported by a matched state filing; present on additions and
  // pending events awaiting a national estimate.
  std::optional<long long> state_residents;
};

bool has_disclosed_count(const BreachEvent& event);

enum class FilingState { kME, kNH };
const char* to_string(FilingState state);
FilingState filing_state_from_string(const std::string& label);

struct StateFiling {
  std::string org_name;
  MonthIndex month = 0;
  long long state_residents = 0;  // > 0
  FilingState state = FilingState::kME;
};

// State residents X paired with the national count Y of the same incident.
// Stored only when Y >= 5 X.
struct MatchedPair {
  long long state_residents = 0;
  double national_records = 0.0;
};

struct SkippedRow {
  std::size_t line = 0;
  std::string reason;
};

struct ParsedBreaches {
  std::vector<BreachRecord> records;
  std::vector<SkippedRow> skipped;  // rows outside the study calendar
};

struct ParsedFilings {
  std::vector<StateFiling> filings;
  std::vector<SkippedRow> skipped;
};

// CSV schema: report_id,group_id,org_name,month,records,category,source.
// Malformed rows throw CsvParseError; rows dated outside the study window
// are skipped and reported, not fatal. Empty and zero record counts both
// mean undisclosed.
ParsedBreaches parse_breaches(std::istream& in);

// CSV schema: org_name,month,state_residents,state.
ParsedFilings parse_filings(std::istream& in);

// Lowercases, strips punctuation, collapses whitespace and drops trailing
// legal suffixes (inc, llc, corp, co, ltd, company, incorporated).
std::string normalize_org_name(std::string_view name);

// Decides whether two (org, month) sightings are the same incident.
using IdentityMatcher =
    std::function<bool(std::string_view org_a, MonthIndex month_a,
                       std::string_view org_b, MonthIndex month_b)>;

// Equal normalized names and months at most max_month_gap apart.
IdentityMatcher default_matcher(int max_month_gap = 2);

// Collapses records sharing a group_id into one event: earliest member
// month, largest disclosed count (undisclosed only when every member is).
// Ungrouped records pass through. Output sorted by (month, org, group).
std::vector<BreachEvent> dedup_by_group(
    const std::vector<BreachRecord>& records);

// Folds healthcare-portal events into the base list: unmatched events are
// appended; on a match the larger disclosed count wins, and a disclosed
// portal count fills an undisclosed base event.
std::vector<BreachEvent> merge_hhs(std::vector<BreachEvent> base,
                                   const std::vector<BreachEvent>& hhs,
                                   const IdentityMatcher& matcher);

const std::vector<std::string>& default_stoplist();

// Drops filings whose lowercased org name contains any stoplist substring.
std::vector<StateFiling> keyword_filter(const std::vector<StateFiling>& filings,
                                        const std::vector<std::string>& stoplist);

struct StateMergeResult {
  std::vector<MatchedPair> pairs;
  // Filings with no base counterpart, carried as new undisclosed events with
  // state_residents set.
  std::vector<BreachEvent> additions;
  // Indices into the (updated) base list whose events matched a filing but
  // lack a national count; their state_residents field has been filled in.
  std::vector<std::size_t> pending;
  // Matched pairs rejected by the national >= 5 x state filter.
  std::size_t filtered_pairs = 0;
};

// Collapses duplicate ME/NH filings (keeping the higher resident count),
// then matches filings against base events. Matches with a disclosed
// national count become calibration pairs when national >= 5 x state;
// unmatched filings become additions; matches lacking a count are marked
// pending for estimation.
StateMergeResult merge_state_filings(std::vector<BreachEvent>& base,
                                     const std::vector<StateFiling>& filings,
                                     const IdentityMatcher& matcher);

// Q1 -> February, Q2 -> May, Q3 -> August, Q4 -> November.
MonthIndex quarter_to_month(int year, int quarter);

}  // namespace breachcost::ingest
