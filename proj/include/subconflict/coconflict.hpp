#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/profiles.hpp"

namespace subconflict {

/// Undirected weighted graph over named nodes. Nodes sorted; each edge
/// stored once with a < b, edges sorted by (a, b), no self-loops.
struct UndirectedGraph {
  struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double weight = 0;
    std::int64_t common = 0;  // shared anti-social authors; 0 when not applicable
  };

  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  /// Validates and normalises orientation and order of `edges`.
  static UndirectedGraph make(std::vector<std::string> nodes, std::vector<Edge> edges);
  std::vector<std::vector<std::uint32_t>> neighbours() const;
  std::vector<double> strengths() const;
};

using CoConflictGraph = UndirectedGraph;

/// Edge between two subreddits when at least `min_common` controversial
/// authors have an anti-social home in both; weight is the Jaccard index
/// of the two author sets. Nodes are `node_names`, edges or not.
CoConflictGraph build_coconflict(std::span<const HomeAssignment> controversial, const Vocabulary& vocab,
                                 std::span<const std::string> node_names, std::int64_t min_common);

/// Largest connected component; ties go to the component holding the
/// lexicographically smallest node. Empty graph gives an empty graph.
UndirectedGraph giant_component(const UndirectedGraph& graph);

struct LouvainOptions {
  std::uint64_t seed = 20160101;
  double epsilon = 1e-7;
  double resolution = 1.0;
};

struct Partition {
  /// Community of each node. Ids are dense and numbered by first appearance in node order.
  std::vector<std::uint32_t> community;
  std::size_t community_count = 0;
  double modularity = 0;
  /// Modularity after each aggregation level, non-decreasing.
  std::vector<double> level_modularity;
};

/// Weighted modularity of an assignment.
double modularity(const UndirectedGraph& graph, std::span<const std::uint32_t> community, double resolution = 1.0);

/// Renumbers community ids densely by first appearance.
std::vector<std::uint32_t> canonical_labels(std::span<const std::uint32_t> community);

/// Multi-level modularity optimisation with seeded node visiting order.
Partition louvain(const UndirectedGraph& graph, const LouvainOptions& options);

/// Boundary edges over all edges touching community `c`, unweighted.
/// 0 with a warning when no edge touches it.
double mu_score(const UndirectedGraph& graph, std::span<const std::uint32_t> community, std::uint32_t c);

/// Unweighted local clustering coefficient; nodes of degree < 2 score 0.
double local_clustering(const UndirectedGraph& graph, std::uint32_t node);

/// Mean local clustering over the members of `c`, neighbourhoods from the whole graph.
double clustering_coefficient(const UndirectedGraph& graph, std::span<const std::uint32_t> community, std::uint32_t c);

struct CommunitySummary {
  std::uint32_t id = 0;
  std::size_t size = 0;
  double mu = 0;
  double cc = 0;
  std::vector<std::string> exemplars;  // highest weighted degree first
};

std::vector<CommunitySummary> summarize_communities(const UndirectedGraph& graph, const Partition& partition,
                                                    std::size_t exemplars = 5);

void write_coconflict_edges_csv(std::ostream& out, const UndirectedGraph& graph);
void write_partition_csv(std::ostream& out, const UndirectedGraph& graph, const Partition& partition);
void write_communities_csv(std::ostream& out, std::span<const CommunitySummary> communities);

}  // namespace subconflict
