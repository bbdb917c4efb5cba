#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subconflict/corpus.hpp"
#include "subconflict/profiles.hpp"
#include "subconflict/temporal.hpp"

namespace subconflict {

struct Thresholds {
  std::int64_t min_total_comments = 100;
  std::int64_t min_sub_comments = 10;
  std::int64_t min_pair_authors = 5;
  std::int64_t min_common_coconflict = 2;
  double z_threshold = 3.0;
  int mc_trials = 30;
  std::int64_t monthly_presence = 3;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct PipelineConfig {
  AnalysisWindow window;
  Thresholds thresholds;
  std::vector<std::string> excluded_subreddits = kDefaultExcludedSubreddits;
  std::vector<std::string> deleted_authors{"[deleted]"};
  std::uint64_t seed = 20160101;
  unsigned threads = 1;
  std::string input;
  std::string outdir = "out";

  bool sample_std = true;
  MonthlyHomeMode temporal_mode = MonthlyHomeMode::Reclassify;
  std::int64_t min_targets_for_focus = 5;
  double louvain_epsilon = 1e-7;
  double louvain_resolution = 1.0;
  std::size_t top_n = 20;
  std::int64_t min_con_authors_report = 20;

  std::size_t max_keys_in_memory = 0;
  std::string spill_dir;

  // synth stage: a scenario file, or else a preset generated with `seed`
  std::string scenario;
  std::string preset = "demo";

  /// Throws ConfigError on the first bad value.
  void validate() const;
  std::string to_json() const;
  /// Every key optional; unknown keys are rejected.
  static PipelineConfig from_json(std::string_view text);
  static PipelineConfig load(const std::filesystem::path& path);

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Applies "dotted.key=value" to the JSON form of the config, e.g.
/// "thresholds.min_sub_comments=20". The value is parsed as JSON when it
/// can be, else taken as a string.
PipelineConfig with_override(const PipelineConfig& config, std::string_view assignment);

enum class Stage { Synth, Ingest, Profiles, Conflict, Filter, Metrics, CoConflict, Temporal, Export, All };

Stage parse_stage(std::string_view name);
std::string_view to_string(Stage stage);

/// Runs one stage against the artifact tree in config.outdir. `All` runs
/// ingest through export in order, preceded by synth when no input is set.
void run_stage(Stage stage, const PipelineConfig& config);

// artifact names relative to outdir
namespace artifact {
inline constexpr const char* kComments = "comments.jsonl";
inline constexpr const char* kGroundTruth = "ground_truth.json";
inline constexpr const char* kScenario = "scenario.json";
inline constexpr const char* kAggregate = "aggregate.csv";
inline constexpr const char* kIngestReport = "ingest_report.json";
inline constexpr const char* kHomes = "homes.csv";
inline constexpr const char* kProfilesSummary = "profiles_summary.json";
inline constexpr const char* kCandidates = "candidates.csv";
inline constexpr const char* kCandidateAuthors = "candidate_authors.csv";
inline constexpr const char* kEdgeTests = "edge_tests.csv";
inline constexpr const char* kConflictGraph = "conflict_graph.csv";
inline constexpr const char* kNodeMetrics = "node_metrics.csv";
inline constexpr const char* kCorrelations = "correlations.csv";
inline constexpr const char* kMetricsSummary = "metrics_summary.json";
inline constexpr const char* kCoConflictEdges = "coconflict_edges.csv";
inline constexpr const char* kPartition = "partition.csv";
inline constexpr const char* kCommunities = "communities.csv";
inline constexpr const char* kCoConflictSummary = "coconflict_summary.json";
inline constexpr const char* kMonthlyDir = "monthly";
inline constexpr const char* kFocus = "focus.csv";
inline constexpr const char* kTrajectoryTargeted = "trajectory_targeted.csv";
inline constexpr const char* kTrajectoryInstigating = "trajectory_instigating.csv";
inline constexpr const char* kConflictGraphML = "conflict_graph.graphml";
inline constexpr const char* kConflictDot = "conflict_graph.dot";
inline constexpr const char* kCoConflictGraphML = "coconflict_graph.graphml";
inline constexpr const char* kCoConflictDot = "coconflict_graph.dot";
}  // namespace artifact

/// Ranking tables written by the metrics stage as rank_<key>.csv.
inline const std::vector<std::string> kReportedRankings{"weighted_indegree", "weighted_outdegree", "avg_out_intensity",
                                                        "indegree", "outdegree", "con_author_percent"};

// graph exports, usable without the artifact tree
void write_conflict_dot(std::ostream& out, const ConflictGraph& graph);
void write_conflict_graphml(std::ostream& out, const ConflictGraph& graph);

}  // namespace subconflict
