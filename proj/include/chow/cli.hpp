#pragma once
// chowcalc: single queries, table reproduction and verification.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chow/invariants.hpp"

namespace chow::cli {

enum ExitCode : int { kSuccess = 0, kMismatch = 1, kUsage = 2 };

struct OutputRecord {
  std::string family;
  int k = 0;
  std::optional<Incidence> incidence;
  std::string value;  // decimal
  std::optional<std::string> curve_count;
  long elapsed_ms = 0;

  bool operator==(const OutputRecord&) const = default;
};

OutputRecord to_record(const InvariantResult& r);

enum class Format { Text, Csv, Json };
std::optional<Format> parse_format(const std::string& s);

std::string format_records(const std::vector<OutputRecord>& records, Format format);
/// Inverse of the JSON format. Throws InvalidInput on malformed input.
std::vector<OutputRecord> parse_json_records(const std::string& text);

/// Cells of table 1 (weights 1, 2, 4), 3 (lines) or 4 (conics), in table order:
/// k ascending, then sorted incidences lexicographically.
std::vector<InvariantRequest> table_requests(int id);
/// Evaluates all cells; `threads` > 1 spreads cells over workers, the output
/// order is fixed regardless.
std::vector<OutputRecord> run_table(int id, int threads = 1);

struct ManifestEntry {
  int table = 0;
  int k = 0;
  std::optional<Incidence> incidence;  // sorted
  std::string value;

  bool operator==(const ManifestEntry&) const = default;
};

/// The 65 published values.
const std::vector<ManifestEntry>& builtin_manifest();
std::string manifest_to_json(const std::vector<ManifestEntry>& manifest);
std::vector<ManifestEntry> manifest_from_json(const std::string& text);

enum class Scope { All, Lines, Conics, Engine };
std::optional<Scope> parse_scope(const std::string& s);

/// Recomputes the tables in scope, compares with `manifest`, runs the property
/// checks in scope and prints a report. Returns kSuccess or kMismatch.
int run_verify(Scope scope, const std::vector<ManifestEntry>& manifest, int threads, std::ostream& out);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chow::cli
