#include "subconflict/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <tuple>

#include "subconflict/common.hpp"
#include "subconflict/format.hpp"

namespace subconflict {

ConflictGraph ConflictGraph::from_edges(std::vector<ConflictEdge> edges) {
  ConflictGraph g;
  std::sort(edges.begin(), edges.end(),
            [](const ConflictEdge& a, const ConflictEdge& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].source == edges[i].source && edges[i - 1].target == edges[i].target)
      throw InputError("duplicate conflict edge " + edges[i].source + " -> " + edges[i].target);
  }
  for (const auto& e : edges) {
    if (e.source == e.target) throw InputError("self-loop conflict edge on " + e.source);
    g.nodes.push_back(e.source);
    g.nodes.push_back(e.target);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  g.edges = std::move(edges);
  return g;
}

void write_conflict_graph_csv(std::ostream& out, const ConflictGraph& graph) {
  csv::write_row(out, kConflictGraphHeader);
  for (const auto& e : graph.edges)
    out << csv::escape(e.source) << ',' << csv::escape(e.target) << ',' << e.k << ',' << e.n_common << ','
        << format_double(e.weight) << ',' << format_double(e.z) << '\n';
}

ConflictGraph read_conflict_graph_csv(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  reader.expect_header(kConflictGraphHeader);
  std::vector<ConflictEdge> edges;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != kConflictGraphHeader.size())
      throw InputError(source_name + ":" + std::to_string(reader.line()) + ": expected 6 columns");
    edges.push_back({row[0], row[1], parse_int(row[2]), parse_int(row[3]), parse_double(row[4]), parse_double(row[5])});
  }
  return ConflictGraph::from_edges(std::move(edges));
}

}  // namespace subconflict
