#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subconflict/common.hpp"

namespace subconflict {

enum class Polarity { Positive, Negative, Neutral };

/// Score is upvotes minus downvotes, the author's own upvote included.
constexpr Polarity classify_polarity(std::int64_t score) {
  if (score > 0) return Polarity::Positive;
  if (score < 0) return Polarity::Negative;
  return Polarity::Neutral;
}

std::string_view to_string(Polarity p);

struct CommentRecord {
  std::string author;
  std::string subreddit;
  std::int64_t score = 0;
  std::int64_t created_utc = 0;
  std::string comment_id;
};

/// Calendar window of the analysis, months inclusive, UTC.
struct AnalysisWindow {
  int year = 2016;
  int first_month = 1;
  int last_month = 12;

  /// Month (1-12) of a UTC epoch timestamp, or 0 when outside the window.
  int month_of(std::int64_t created_utc) const;
  bool contains(std::int64_t created_utc) const { return month_of(created_utc) != 0; }
  void validate() const;
  friend bool operator==(const AnalysisWindow&, const AnalysisWindow&) = default;
};

enum class SkipReason { DeletedAuthor, MalformedField, OutOfWindow, EmptyLine };
inline constexpr std::array kAllSkipReasons = {SkipReason::DeletedAuthor, SkipReason::MalformedField,
                                               SkipReason::OutOfWindow, SkipReason::EmptyLine};
std::string_view to_string(SkipReason r);

struct Skip {
  SkipReason reason;
  friend bool operator==(const Skip&, const Skip&) = default;
};

struct ParseOptions {
  AnalysisWindow window;
  std::vector<std::string> deleted_authors{"[deleted]"};
};

using ParseResult = std::variant<CommentRecord, Skip>;

/// Parses one newline-delimited JSON object. Field-level problems (missing
/// or mistyped field, empty identifier) yield Skip; a line that is not a
/// syntactically valid JSON object throws CorruptInputError whose offset is
/// relative to the start of the line.
ParseResult parse_record(std::string_view line, const ParseOptions& options);

/// Per (author, subreddit, month) polarity counts.
struct AuthorSubredditStat {
  std::string author;
  std::string subreddit;
  int month = 0;
  PolarityCounts counts;

  friend bool operator==(const AuthorSubredditStat&, const AuthorSubredditStat&) = default;
};

/// Sorted by (author, subreddit, month), keys unique, no all-zero rows.
using AggregateTable = std::vector<AuthorSubredditStat>;

/// Single-threaded reference aggregation of already-parsed records.
/// Records outside the window are ignored.
AggregateTable aggregate(std::span<const CommentRecord> records, const AnalysisWindow& window);

struct IngestOptions {
  ParseOptions parse;
  unsigned threads = 1;
  std::size_t block_bytes = std::size_t{32} << 20;
  /// Distinct (author, subreddit) keys held in memory before sorted runs are
  /// spilled to disk; 0 disables spilling.
  std::size_t max_keys_in_memory = 0;
  std::filesystem::path spill_dir = std::filesystem::temp_directory_path();
};

struct IngestReport {
  std::uint64_t lines = 0;
  std::uint64_t records = 0;
  std::map<SkipReason, std::uint64_t> skips;
  std::uint64_t spilled_runs = 0;

  std::uint64_t skipped() const;
};

struct IngestResult {
  AggregateTable stats;
  IngestReport report;
};

/// Streams newline-delimited records through parse_record and aggregates
/// them. Deterministic for any thread count, block size or spill budget.
IngestResult ingest_stream(std::istream& in, const IngestOptions& options);
IngestResult ingest_buffer(std::string_view text, const IngestOptions& options);
/// Files ending in ".gz" are decompressed on the fly.
IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options);

inline const std::vector<std::string> kAggregateHeader{"author", "subreddit", "month", "n_pos", "n_neg", "n_neu"};
void write_aggregate_csv(std::ostream& out, const AggregateTable& table);
AggregateTable read_aggregate_csv(std::istream& in, const std::string& source_name);

}  // namespace subconflict
