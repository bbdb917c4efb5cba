#include "subconflict/coconflict.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <tuple>

#include "subconflict/format.hpp"
#include "subconflict/rng.hpp"

namespace subconflict {

UndirectedGraph UndirectedGraph::make(std::vector<std::string> nodes, std::vector<Edge> edges) {
  SUBCONFLICT_ASSERT(std::is_sorted(nodes.begin(), nodes.end()), "graph nodes must be sorted");
  for (auto& e : edges) {
    SUBCONFLICT_ASSERT(e.a != e.b, "self-loop in undirected graph");
    SUBCONFLICT_ASSERT(e.a < nodes.size() && e.b < nodes.size(), "edge endpoint out of range");
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (std::size_t i = 1; i < edges.size(); ++i)
    SUBCONFLICT_ASSERT(edges[i - 1].a != edges[i].a || edges[i - 1].b != edges[i].b, "duplicate undirected edge");
  return UndirectedGraph{std::move(nodes), std::move(edges)};
}

std::vector<std::vector<std::uint32_t>> UndirectedGraph::neighbours() const {
  std::vector<std::vector<std::uint32_t>> adj(nodes.size());
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

std::vector<double> UndirectedGraph::strengths() const {
  std::vector<double> k(nodes.size(), 0.0);
  for (const auto& e : edges) {
    k[e.a] += e.weight;
    k[e.b] += e.weight;
  }
  return k;
}

CoConflictGraph build_coconflict(std::span<const HomeAssignment> controversial, const Vocabulary& vocab,
                                 std::span<const std::string> node_names, std::int64_t min_common) {
  std::vector<std::string> nodes(node_names.begin(), node_names.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  // subreddit id -> node index
  std::vector<std::int64_t> node_of(vocab.subreddit_count(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (auto id = vocab.find_subreddit(nodes[i])) node_of[*id] = static_cast<std::int64_t>(i);

  std::vector<std::int64_t> set_size(nodes.size(), 0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> shared;
  std::vector<std::uint32_t> targets;
  for (const auto& h : controversial) {
    targets.clear();
    for (SubId s : h.antisocial)
      if (node_of[s] >= 0) targets.push_back(static_cast<std::uint32_t>(node_of[s]));
    std::sort(targets.begin(), targets.end());
    for (std::size_t i = 0; i < targets.size(); ++i) {
      ++set_size[targets[i]];
      for (std::size_t j = i + 1; j < targets.size(); ++j) ++shared[{targets[i], targets[j]}];
    }
  }
  std::vector<UndirectedGraph::Edge> edges;
  for (const auto& [pair, common] : shared) {
    if (common < min_common) continue;
    const auto uni = set_size[pair.first] + set_size[pair.second] - common;
    edges.push_back({pair.first, pair.second, static_cast<double>(common) / static_cast<double>(uni), common});
  }
  return UndirectedGraph::make(std::move(nodes), std::move(edges));
}

UndirectedGraph giant_component(const UndirectedGraph& graph) {
  const std::size_t n = graph.nodes.size();
  if (n == 0) return {};
  const auto adj = graph.neighbours();
  std::vector<std::int64_t> comp(n, -1);
  std::vector<std::vector<std::uint32_t>> members;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const auto c = static_cast<std::int64_t>(members.size());
    members.emplace_back();
    std::vector<std::uint32_t> stack{start};
    comp[start] = c;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      members[c].push_back(v);
      for (auto w : adj[v])
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
  }
  // components are discovered in order of their smallest node, so the first
  // largest one also holds the smallest name among equals
  std::size_t best = 0;
  for (std::size_t c = 1; c < members.size(); ++c)
    if (members[c].size() > members[best].size()) best = c;
  auto keep = members[best];
  std::sort(keep.begin(), keep.end());
  std::vector<std::int64_t> remap(n, -1);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = static_cast<std::int64_t>(i);
    nodes.push_back(graph.nodes[keep[i]]);
  }
  std::vector<UndirectedGraph::Edge> edges;
  for (const auto& e : graph.edges)
    if (remap[e.a] >= 0 && remap[e.b] >= 0)
      edges.push_back({static_cast<std::uint32_t>(remap[e.a]), static_cast<std::uint32_t>(remap[e.b]), e.weight, e.common});
  return UndirectedGraph::make(std::move(nodes), std::move(edges));
}

double modularity(const UndirectedGraph& graph, std::span<const std::uint32_t> community, double resolution) {
  SUBCONFLICT_ASSERT(community.size() == graph.nodes.size(), "assignment size mismatch");
  const auto labels = canonical_labels(community);
  const std::size_t k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> internal(k, 0.0), total(k, 0.0);
  double two_m = 0;
  for (const auto& e : graph.edges) {
    two_m += 2 * e.weight;
    total[labels[e.a]] += e.weight;
    total[labels[e.b]] += e.weight;
    if (labels[e.a] == labels[e.b]) internal[labels[e.a]] += 2 * e.weight;
  }
  if (two_m == 0) return 0;
  double q = 0;
  for (std::size_t c = 0; c < k; ++c) q += internal[c] / two_m - resolution * (total[c] / two_m) * (total[c] / two_m);
  return q;
}

std::vector<std::uint32_t> canonical_labels(std::span<const std::uint32_t> community) {
  std::map<std::uint32_t, std::uint32_t> seen;
  std::vector<std::uint32_t> out(community.size());
  for (std::size_t i = 0; i < community.size(); ++i) {
    auto [it, fresh] = seen.emplace(community[i], static_cast<std::uint32_t>(seen.size()));
    out[i] = it->second;
  }
  return out;
}

namespace {

// Weighted graph for one Louvain level. A[i][i] lives in `loop` and is the
// matrix diagonal entry, i.e. already doubled for aggregated internal weight.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> loop;
  std::vector<double> strength;
  double two_m = 0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const UndirectedGraph& g) {
  LevelGraph lg;
  lg.adj.resize(g.nodes.size());
  lg.loop.assign(g.nodes.size(), 0.0);
  lg.strength.assign(g.nodes.size(), 0.0);
  for (const auto& e : g.edges) {
    lg.adj[e.a].emplace_back(e.b, e.weight);
    lg.adj[e.b].emplace_back(e.a, e.weight);
    lg.strength[e.a] += e.weight;
    lg.strength[e.b] += e.weight;
    lg.two_m += 2 * e.weight;
  }
  return lg;
}

double level_modularity(const LevelGraph& g, const std::vector<std::uint32_t>& comm, double gamma) {
  if (g.two_m == 0) return 0;
  const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
  std::vector<double> in(k, 0.0), tot(k, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    tot[comm[i]] += g.strength[i];
    in[comm[i]] += g.loop[i];
    for (const auto& [j, w] : g.adj[i])
      if (comm[j] == comm[i]) in[comm[i]] += w;
  }
  double q = 0;
  for (std::size_t c = 0; c < k; ++c) q += in[c] / g.two_m - gamma * (tot[c] / g.two_m) * (tot[c] / g.two_m);
  return q;
}

// One local-moving phase. Returns true if any node changed community.
bool local_moves(const LevelGraph& g, std::vector<std::uint32_t>& comm, const LouvainOptions& opt, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.strength[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng::uniform_below(rng, i)]);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool moved_any = false;
  double q = level_modularity(g, comm, opt.resolution);
  for (;;) {
    bool moved = false;
    for (const auto i : order) {
      const auto own = comm[i];
      const double ki = g.strength[i];
      touched.clear();
      touched.push_back(own);
      for (const auto& [j, w] : g.adj[i]) {
        const auto c = comm[j];
        if (link[c] == 0 && std::find(touched.begin(), touched.end(), c) == touched.end()) touched.push_back(c);
        link[c] += w;
      }
      tot[own] -= ki;
      const auto gain = [&](std::uint32_t c) { return link[c] - opt.resolution * tot[c] * ki / g.two_m; };
      std::uint32_t best = own;
      double best_gain = gain(own);
      for (const auto c : touched) {
        const double gc = gain(c);
        if (gc > best_gain || (gc == best_gain && c < best && best != own)) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += ki;
      if (best != own) {
        comm[i] = best;
        moved = true;
        moved_any = true;
      }
      for (const auto c : touched) link[c] = 0;
    }
    if (!moved) break;
    const double q_next = level_modularity(g, comm, opt.resolution);
    const double improvement = q_next - q;
    q = q_next;
    if (improvement < opt.epsilon) break;
  }
  return moved_any;
}

LevelGraph aggregate_level(const LevelGraph& g, const std::vector<std::uint32_t>& comm, std::size_t k) {
  LevelGraph out;
  out.adj.resize(k);
  out.loop.assign(k, 0.0);
  out.strength.assign(k, 0.0);
  out.two_m = g.two_m;
  std::vector<std::map<std::uint32_t, double>> acc(k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto ci = comm[i];
    out.loop[ci] += g.loop[i];
    out.strength[ci] += g.strength[i];
    for (const auto& [j, w] : g.adj[i]) {
      const auto cj = comm[j];
      if (cj == ci) out.loop[ci] += w;  // both directions are visited, giving the doubled diagonal
      else acc[ci][cj] += w;
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    for (const auto& [d, w] : acc[c]) out.adj[c].emplace_back(d, w);
  return out;
}

}  // namespace

Partition louvain(const UndirectedGraph& graph, const LouvainOptions& options) {
  if (!(options.resolution > 0)) throw ConfigError("louvain resolution must be positive");
  if (!(options.epsilon >= 0)) throw ConfigError("louvain epsilon must be non-negative");
  const std::size_t n = graph.nodes.size();
  Partition p;
  p.community.resize(n);
  std::iota(p.community.begin(), p.community.end(), 0u);
  if (n == 0) return p;

  LevelGraph level = level_from(graph);
  double q = modularity(graph, p.community, options.resolution);
  p.level_modularity.push_back(q);
  if (level.two_m > 0) {
    for (std::uint64_t depth = 0;; ++depth) {
      std::vector<std::uint32_t> comm(level.size());
      std::iota(comm.begin(), comm.end(), 0u);
      std::mt19937_64 rng(rng::mix(options.seed, depth));
      if (!local_moves(level, comm, options, rng)) break;
      comm = canonical_labels(comm);
      const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
      std::vector<std::uint32_t> candidate(n);
      for (std::size_t v = 0; v < n; ++v) candidate[v] = comm[p.community[v]];
      const double q_next = modularity(graph, candidate, options.resolution);
      if (q_next < q) break;  // never accept a level that lowers modularity
      const double gain = q_next - q;
      p.community = std::move(candidate);
      q = q_next;
      p.level_modularity.push_back(q);
      if (k == level.size() || gain < options.epsilon) break;
      level = aggregate_level(level, comm, k);
    }
  }
  p.community = canonical_labels(p.community);
  p.community_count = *std::max_element(p.community.begin(), p.community.end()) + 1;
  p.modularity = modularity(graph, p.community, options.resolution);
  return p;
}

double mu_score(const UndirectedGraph& graph, std::span<const std::uint32_t> community, std::uint32_t c) {
  std::size_t incident = 0, boundary = 0;
  for (const auto& e : graph.edges) {
    const bool ia = community[e.a] == c;
    const bool ib = community[e.b] == c;
    if (!ia && !ib) continue;
    ++incident;
    if (ia != ib) ++boundary;
  }
  if (incident == 0) {
    warn("mu-score of community " + std::to_string(c) + " without incident edges is reported as 0");
    return 0;
  }
  return static_cast<double>(boundary) / static_cast<double>(incident);
}

namespace {
double local_clustering_with(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t v) {
  const auto& nb = adj[v];
  const std::size_t d = nb.size();
  if (d < 2) return 0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& other = adj[nb[i]];
    // count neighbours of nb[i] that are later in v's neighbour list
    auto it = std::upper_bound(nb.begin(), nb.end(), nb[i]);
    for (; it != nb.end(); ++it)
      if (std::binary_search(other.begin(), other.end(), *it)) ++links;
  }
  return static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
}
}  // namespace

double local_clustering(const UndirectedGraph& graph, std::uint32_t node) {
  return local_clustering_with(graph.neighbours(), node);
}

double clustering_coefficient(const UndirectedGraph& graph, std::span<const std::uint32_t> community, std::uint32_t c) {
  const auto adj = graph.neighbours();
  double sum = 0;
  std::size_t members = 0;
  for (std::uint32_t v = 0; v < graph.nodes.size(); ++v) {
    if (community[v] != c) continue;
    sum += local_clustering_with(adj, v);
    ++members;
  }
  return members ? sum / static_cast<double>(members) : 0;
}

std::vector<CommunitySummary> summarize_communities(const UndirectedGraph& graph, const Partition& partition,
                                                    std::size_t exemplars) {
  const auto adj = graph.neighbours();
  const auto strength = graph.strengths();
  std::vector<CommunitySummary> out(partition.community_count);
  std::vector<std::vector<std::uint32_t>> members(partition.community_count);
  for (std::uint32_t v = 0; v < graph.nodes.size(); ++v) members[partition.community[v]].push_back(v);
  for (std::uint32_t c = 0; c < out.size(); ++c) {
    auto& s = out[c];
    s.id = c;
    s.size = members[c].size();
    s.mu = mu_score(graph, partition.community, c);
    double cc = 0;
    for (auto v : members[c]) cc += local_clustering_with(adj, v);
    s.cc = s.size ? cc / static_cast<double>(s.size) : 0;
    auto ranked = members[c];
    std::sort(ranked.begin(), ranked.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (strength[a] != strength[b]) return strength[a] > strength[b];
      return a < b;
    });
    for (std::size_t i = 0; i < ranked.size() && i < exemplars; ++i) s.exemplars.push_back(graph.nodes[ranked[i]]);
  }
  return out;
}

void write_coconflict_edges_csv(std::ostream& out, const UndirectedGraph& graph) {
  csv::write_row(out, {"a", "b", "weight", "common_count"});
  for (const auto& e : graph.edges)
    out << csv::escape(graph.nodes[e.a]) << ',' << csv::escape(graph.nodes[e.b]) << ',' << format_double(e.weight) << ','
        << e.common << '\n';
}

void write_partition_csv(std::ostream& out, const UndirectedGraph& graph, const Partition& partition) {
  csv::write_row(out, {"subreddit", "community_id"});
  for (std::size_t v = 0; v < graph.nodes.size(); ++v)
    out << csv::escape(graph.nodes[v]) << ',' << partition.community[v] << '\n';
}

void write_communities_csv(std::ostream& out, std::span<const CommunitySummary> communities) {
  csv::write_row(out, {"community_id", "size", "mu", "cc", "exemplars"});
  for (const auto& c : communities) {
    std::string ex;
    for (const auto& e : c.exemplars) ex += (ex.empty() ? "" : ";") + e;
    out << c.id << ',' << c.size << ',' << format_double(c.mu) << ',' << format_double(c.cc) << ',' << csv::escape(ex)
        << '\n';
  }
}

}  // namespace subconflict
