#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/graph.hpp"
#include "subconflict/profiles.hpp"

namespace subconflict {

struct NodeMetrics {
  std::string subreddit;
  std::int64_t indegree = 0;
  std::int64_t outdegree = 0;
  double weighted_indegree = 0;
  double weighted_outdegree = 0;
  double avg_in_intensity = 0;   // weighted_indegree / indegree, 0 without incoming edges
  double avg_out_intensity = 0;  // weighted_outdegree / outdegree, 0 without outgoing edges
  std::int64_t size = 0;         // authors with significant presence
  std::int64_t n_con_authors = 0;  // controversial authors with a social home here
  double con_author_percent = 0;
  double avg_subs_targeted = 0;
  double median_subs_targeted = 0;
};

/// Degree fields only, one row per graph node in node order.
std::vector<NodeMetrics> degree_metrics(const ConflictGraph& graph);

/// Degree fields plus size and controversial-author statistics.
std::vector<NodeMetrics> node_metrics(const ConflictGraph& graph, std::span<const HomeAssignment> controversial,
                                      const Activity& activity, std::int64_t min_sub_comments);

/// Fraction of directed edges whose reverse edge exists. 0 (with a warning) for an empty graph.
double reciprocity(const ConflictGraph& graph);

/// Ranks starting at 1; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct SpearmanResult {
  bool computable = false;  // false when either rank vector has zero variance
  std::size_t n = 0;
  double rho = 0;
  double p_value = 0;  // two-sided, t approximation with n-2 degrees of freedom; NaN for n < 3
};

/// Throws ConfigError unless |x| == |y| >= 2.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationEntry {
  std::string name;
  SpearmanResult result;  // entries over fewer than 3 points are marked not computable
};

/// Reciprocated-edge intensities, degree vs average intensity (in and out),
/// and size vs degree and average intensity (in and out). In-side entries use
/// nodes with incoming edges, out-side entries nodes with outgoing edges.
std::vector<CorrelationEntry> correlation_report(const ConflictGraph& graph, std::span<const NodeMetrics> metrics);

struct RankRow {
  std::size_t rank = 0;
  std::string subreddit;
  double value = 0;
};

inline const std::vector<std::string> kRankKeys{
    "indegree",          "outdegree",      "weighted_indegree",  "weighted_outdegree",   "avg_in_intensity",
    "avg_out_intensity", "size",           "con_author_percent", "avg_subs_targeted", "median_subs_targeted",
    "n_con_authors"};

double metric_value(const NodeMetrics& m, std::string_view key);

/// Descending by `key`, ties by subreddit name. Rows with fewer than
/// `min_con_authors` controversial authors are left out of the table only.
std::vector<RankRow> rankings(std::span<const NodeMetrics> metrics, std::string_view key, std::size_t top_n,
                              std::int64_t min_con_authors = 0);

inline const std::vector<std::string> kNodeMetricsHeader{
    "subreddit",         "indegree",          "outdegree", "weighted_indegree", "weighted_outdegree",
    "avg_in_intensity",  "avg_out_intensity", "size",      "n_con_authors",     "con_author_percent",
    "avg_subs_targeted", "median_subs_targeted"};
void write_node_metrics_csv(std::ostream& out, std::span<const NodeMetrics> metrics);
void write_correlations_csv(std::ostream& out, std::span<const CorrelationEntry> entries);
void write_rankings_csv(std::ostream& out, std::span<const RankRow> rows, std::string_view key);

}  // namespace subconflict
