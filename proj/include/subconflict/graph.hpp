#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace subconflict {

struct ConflictEdge {
  std::string source;
  std::string target;
  std::int64_t k = 0;
  std::int64_t n_common = 0;
  double weight = 0;
  double z = 0;
};

/// Directed weighted conflict graph. Nodes are exactly the edge endpoints,
/// sorted; edges sorted by (source, target), unique.
struct ConflictGraph {
  std::vector<std::string> nodes;
  std::vector<ConflictEdge> edges;

  /// Builds the node list from the edges and sorts everything.
  static ConflictGraph from_edges(std::vector<ConflictEdge> edges);
  bool empty() const { return edges.empty(); }
};

inline const std::vector<std::string> kConflictGraphHeader{"source", "target", "k", "n_common", "weight", "z"};
void write_conflict_graph_csv(std::ostream& out, const ConflictGraph& graph);
ConflictGraph read_conflict_graph_csv(std::istream& in, const std::string& source_name);

}  // namespace subconflict
