#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/graph.hpp"
#include "subconflict/metrics.hpp"
#include "subconflict/profiles.hpp"
#include "subconflict/significance.hpp"

namespace subconflict {

enum class MonthlyHomeMode {
  /// Homes re-derived from each month's counts, cohort authors only.
  Reclassify,
  /// Yearly homes kept; a home counts in a month only with monthly presence there.
  YearlyHomes,
};

struct TemporalOptions {
  std::int64_t monthly_presence = 3;
  std::int64_t min_pair_authors = 5;
  MonthlyHomeMode mode = MonthlyHomeMode::Reclassify;
  std::vector<std::string> excluded = kDefaultExcludedSubreddits;
  SignificanceOptions significance;
  int first_month = 1;
  int last_month = 12;
};

/// Yearly authors and nodes every monthly graph is restricted to.
struct Cohort {
  std::vector<AuthorId> qualified;
  std::vector<HomeAssignment> controversial;
  std::vector<std::string> nodes;
};

struct MonthlySeries {
  std::array<ConflictGraph, 12> months;  // index 0 is January
};

/// One conflict graph per month of the window; months outside it are empty.
MonthlySeries monthly_graphs(const StatsIndex& index, const Cohort& cohort, const TemporalOptions& options);

using TopTarget = std::optional<std::string>;

/// Highest-weight outgoing edge of `source`, ties to the smaller target name.
TopTarget top_target(const ConflictGraph& graph, const std::string& source);

/// Adjacent pairs whose top target differs; a switch between no target and
/// some target counts, two months without a target do not.
int change_count(std::span<const TopTarget> track);

struct FocusTrack {
  std::string source;
  std::array<TopTarget, 12> top;
  int changes = 0;
};

/// Tracks for sources with at least `min_yearly_targets` targets in the yearly graph.
std::vector<FocusTrack> focus_tracks(const ConflictGraph& yearly, const MonthlySeries& series,
                                     std::int64_t min_yearly_targets = 5);

/// Per-month ranking tables for a metrics key (weighted_indegree for the
/// most targeted, weighted_outdegree for the most instigating).
std::array<std::vector<RankRow>, 12> monthly_rankings(const MonthlySeries& series, std::string_view key,
                                                      std::size_t top_n);

/// Full monthly rank of every node in `nodes`; 0 where absent from a month's graph.
struct RankTrajectory {
  std::string subreddit;
  std::array<std::size_t, 12> rank{};
};
std::vector<RankTrajectory> rank_trajectories(const MonthlySeries& series, std::span<const std::string> nodes,
                                              std::string_view key);

void write_focus_csv(std::ostream& out, std::span<const FocusTrack> tracks);
void write_trajectories_csv(std::ostream& out, std::span<const RankTrajectory> rows);
void write_monthly_rankings_csv(std::ostream& out, const std::array<std::vector<RankRow>, 12>& tables,
                                std::string_view key);

}  // namespace subconflict
