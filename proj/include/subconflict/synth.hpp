#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subconflict/corpus.hpp"

namespace subconflict::synth {

struct SubredditSpec {
  std::string name;
  double p_pos = 0.7;
  double p_neg = 0.1;  // neutral takes the remainder

  friend bool operator==(const SubredditSpec&, const SubredditSpec&) = default;
};

/// Authors who comment in a random subset of `pool` using each subreddit's baseline rates.
struct BackgroundCohort {
  std::string prefix = "bg";
  int authors = 0;
  std::vector<std::string> pool;  // empty means every non-filler subreddit
  int subreddits_per_author = 3;
  int min_comments = 12;          // per chosen subreddit, inclusive range
  int max_comments = 30;
  int filler_comments = 100;      // in the filler subreddit
  /// Redraw a subreddit's comments until its majority matches the baseline,
  /// which makes these authors' homes part of the ground truth.
  bool enforce_design = false;

  friend bool operator==(const BackgroundCohort&, const BackgroundCohort&) = default;
};

/// Authors with a social home in `source` and an anti-social home in `target`.
struct PlantedConflict {
  std::string source;
  std::string target;
  int authors = 12;
  int comments_source = 15;  // per author over the year, spread evenly over `months`
  int comments_target = 15;
  double source_rate = 0.9;  // probability of an upvoted comment in source
  double target_rate = 0.9;  // probability of a downvoted comment in target
  std::vector<int> months{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::optional<int> filler_comments;  // default: just enough to qualify
  std::string prefix;                  // default: "<source>_vs_<target>"

  friend bool operator==(const PlantedConflict&, const PlantedConflict&) = default;
};

/// Thresholds the ground truth is computed for; must match the pipeline config.
struct TruthThresholds {
  std::int64_t min_total_comments = 100;
  std::int64_t min_sub_comments = 10;
  std::int64_t min_pair_authors = 5;
  std::int64_t monthly_presence = 3;

  friend bool operator==(const TruthThresholds&, const TruthThresholds&) = default;
};

struct Scenario {
  int year = 2016;
  std::uint64_t seed = 1;
  std::string filler_subreddit = "AskReddit";
  TruthThresholds thresholds;
  std::vector<SubredditSpec> subreddits;
  std::vector<BackgroundCohort> background;
  std::vector<PlantedConflict> conflicts;

  /// Throws ConfigError naming the first infeasible element.
  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(std::string_view json_text);
std::string scenario_to_json(const Scenario& scenario);

struct TruthHomes {
  std::vector<std::string> social;
  std::vector<std::string> antisocial;
  friend bool operator==(const TruthHomes&, const TruthHomes&) = default;
};

struct TruthEdge {
  std::string source;
  std::string target;
  std::int64_t k = 0;
  std::int64_t n_common = 0;
  double weight = 0;
  friend bool operator==(const TruthEdge&, const TruthEdge&) = default;
};

/// What the pipeline must find, derived from the scenario design. Only
/// authors whose homes are designed (planted authors and enforced cohorts)
/// contribute; unenforced cohorts may add chance conflicts on top.
struct GroundTruth {
  std::map<std::string, TruthHomes> homes;  // designed authors with at least one home
  std::vector<std::string> controversial_authors;
  std::vector<TruthEdge> edges;
  std::map<int, std::vector<TruthEdge>> monthly_edges;  // from planted conflicts only
  std::map<std::string, std::vector<std::optional<std::string>>> monthly_top_targets;  // 12 entries per source
  /// Common authors per (source, target) subreddit pair over the year, for every author.
  std::map<std::pair<std::string, std::string>, std::int64_t> n_common;

  std::string to_json() const;
};

struct GeneratedCorpus {
  std::vector<CommentRecord> comments;
  GroundTruth truth;
};

/// Deterministic for a given scenario, seed included.
GeneratedCorpus generate(const Scenario& scenario);

void write_comments_jsonl(std::ostream& out, std::span<const CommentRecord> comments);

// Preset scenarios used by the demo, the tests and the acceptance suite.

/// Small end-to-end demo with reciprocated conflicts and a co-targeted cluster.
Scenario demo_scenario();
/// 20 subreddits and 10 planted conflicts at rates 0.9/0.9.
Scenario planted_scenario(std::uint64_t seed);
/// Every author draws from subreddit baselines that sit close to balance.
Scenario null_scenario(std::uint64_t seed);
/// Planted conflicts at several comment levels plus a balanced background.
Scenario mixed_scenario(std::uint64_t seed);
/// "demo", "planted", "null" or "mixed".
Scenario preset(std::string_view name, std::uint64_t seed);

/// Streams `records` flat uniform-random records straight to `out`, for
/// throughput measurements where materialising a corpus would not fit.
void write_flat_corpus(std::ostream& out, std::uint64_t records, std::uint32_t authors, std::uint32_t subreddits,
                       std::uint64_t seed, int year = 2016);

}  // namespace subconflict::synth
