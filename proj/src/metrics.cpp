#include "subconflict/metrics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "subconflict/format.hpp"

namespace subconflict {

namespace {

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& name) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), name) - sorted.begin());
}

double median(std::vector<std::int64_t> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? static_cast<double>(v[n / 2]) : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

std::vector<NodeMetrics> degree_metrics(const ConflictGraph& graph) {
  std::vector<NodeMetrics> out(graph.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].subreddit = graph.nodes[i];
  for (const auto& e : graph.edges) {
    auto& s = out[index_of(graph.nodes, e.source)];
    auto& t = out[index_of(graph.nodes, e.target)];
    ++s.outdegree;
    s.weighted_outdegree += e.weight;
    ++t.indegree;
    t.weighted_indegree += e.weight;
  }
  for (auto& m : out) {
    m.avg_in_intensity = m.indegree ? m.weighted_indegree / m.indegree : 0;
    m.avg_out_intensity = m.outdegree ? m.weighted_outdegree / m.outdegree : 0;
  }
  return out;
}

std::vector<NodeMetrics> node_metrics(const ConflictGraph& graph, std::span<const HomeAssignment> controversial,
                                      const Activity& activity, std::int64_t min_sub_comments) {
  auto out = degree_metrics(graph);
  const Vocabulary& vocab = activity.vocab();
  std::vector<std::int64_t> size(vocab.subreddit_count(), 0);
  for (AuthorId a = 0; a < activity.author_count(); ++a)
    for (const auto& p : activity.of(a))
      if (p.counts.total() > min_sub_comments) ++size[p.sub];

  std::vector<std::vector<std::int64_t>> targeted(vocab.subreddit_count());
  for (const auto& h : controversial)
    for (SubId s : h.social) targeted[s].push_back(static_cast<std::int64_t>(h.antisocial.size()));

  for (auto& m : out) {
    const auto id = vocab.find_subreddit(m.subreddit);
    if (!id) continue;
    m.size = size[*id];
    const auto& t = targeted[*id];
    m.n_con_authors = static_cast<std::int64_t>(t.size());
    m.con_author_percent = m.size > 0 ? 100.0 * m.n_con_authors / m.size : 0;
    if (!t.empty()) {
      m.avg_subs_targeted = static_cast<double>(std::accumulate(t.begin(), t.end(), std::int64_t{0})) / t.size();
      m.median_subs_targeted = median(t);
    }
  }
  return out;
}

double reciprocity(const ConflictGraph& graph) {
  if (graph.edges.empty()) {
    warn("reciprocity of an empty graph is reported as 0");
    return 0;
  }
  std::set<std::pair<std::string_view, std::string_view>> present;
  for (const auto& e : graph.edges) present.emplace(e.source, e.target);
  std::size_t reciprocated = 0;
  for (const auto& e : graph.edges)
    if (present.count({e.target, e.source})) ++reciprocated;
  return static_cast<double>(reciprocated) / graph.edges.size();
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (i + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("spearman: sequences differ in length");
  if (x.size() < 2) throw ConfigError("spearman: need at least two observations");
  SpearmanResult r;
  r.n = x.size();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(r.n);
  // mean rank is (n+1)/2 regardless of ties
  const double mean = (n + 1) / 2;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return r;
  r.computable = true;
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (r.n < 3) {
    r.p_value = std::numeric_limits<double>::quiet_NaN();
  } else if (std::abs(r.rho) == 1.0) {
    r.p_value = 0;
  } else {
    const double df = n - 2;
    const double t = r.rho * std::sqrt(df / (1 - r.rho * r.rho));
    boost::math::students_t_distribution<double> dist(df);
    r.p_value = std::min(1.0, 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return r;
}

std::vector<CorrelationEntry> correlation_report(const ConflictGraph& graph, std::span<const NodeMetrics> metrics) {
  std::vector<CorrelationEntry> out;
  const auto add = [&](std::string name, const std::vector<double>& x, const std::vector<double>& y) {
    CorrelationEntry e{std::move(name), {}};
    e.result.n = x.size();
    if (x.size() >= 3) e.result = spearman(x, y);
    out.push_back(std::move(e));
  };

  std::map<std::pair<std::string_view, std::string_view>, double> weight;
  for (const auto& e : graph.edges) weight[{e.source, e.target}] = e.weight;
  std::vector<double> fwd, rev;
  for (const auto& e : graph.edges) {
    const auto it = weight.find({e.target, e.source});
    if (it == weight.end()) continue;
    fwd.push_back(e.weight);
    rev.push_back(it->second);
  }
  add("reciprocated_intensity", fwd, rev);

  std::vector<double> indeg, avg_in, size_in, outdeg, avg_out, size_out;
  for (const auto& m : metrics) {
    if (m.indegree > 0) {
      indeg.push_back(static_cast<double>(m.indegree));
      avg_in.push_back(m.avg_in_intensity);
      size_in.push_back(static_cast<double>(m.size));
    }
    if (m.outdegree > 0) {
      outdeg.push_back(static_cast<double>(m.outdegree));
      avg_out.push_back(m.avg_out_intensity);
      size_out.push_back(static_cast<double>(m.size));
    }
  }
  add("indegree_vs_avg_in_intensity", indeg, avg_in);
  add("outdegree_vs_avg_out_intensity", outdeg, avg_out);
  add("size_vs_indegree", size_in, indeg);
  add("size_vs_outdegree", size_out, outdeg);
  add("size_vs_avg_in_intensity", size_in, avg_in);
  add("size_vs_avg_out_intensity", size_out, avg_out);
  return out;
}

double metric_value(const NodeMetrics& m, std::string_view key) {
  if (key == "indegree") return static_cast<double>(m.indegree);
  if (key == "outdegree") return static_cast<double>(m.outdegree);
  if (key == "weighted_indegree") return m.weighted_indegree;
  if (key == "weighted_outdegree") return m.weighted_outdegree;
  if (key == "avg_in_intensity") return m.avg_in_intensity;
  if (key == "avg_out_intensity") return m.avg_out_intensity;
  if (key == "size") return static_cast<double>(m.size);
  if (key == "con_author_percent") return m.con_author_percent;
  if (key == "avg_subs_targeted") return m.avg_subs_targeted;
  if (key == "median_subs_targeted") return m.median_subs_targeted;
  if (key == "n_con_authors") return static_cast<double>(m.n_con_authors);
  throw ConfigError("unknown ranking key '" + std::string(key) + "'");
}

std::vector<RankRow> rankings(std::span<const NodeMetrics> metrics, std::string_view key, std::size_t top_n,
                              std::int64_t min_con_authors) {
  std::vector<RankRow> rows;
  for (const auto& m : metrics) {
    if (m.n_con_authors < min_con_authors) continue;
    rows.push_back({0, m.subreddit, metric_value(m, key)});
  }
  if (rows.empty()) metric_value(NodeMetrics{}, key);  // reject unknown keys on empty input too
  std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.subreddit < b.subreddit;
  });
  if (rows.size() > top_n) rows.resize(top_n);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

void write_node_metrics_csv(std::ostream& out, std::span<const NodeMetrics> metrics) {
  csv::write_row(out, kNodeMetricsHeader);
  for (const auto& m : metrics)
    out << csv::escape(m.subreddit) << ',' << m.indegree << ',' << m.outdegree << ',' << format_double(m.weighted_indegree)
        << ',' << format_double(m.weighted_outdegree) << ',' << format_double(m.avg_in_intensity) << ','
        << format_double(m.avg_out_intensity) << ',' << m.size << ',' << m.n_con_authors << ','
        << format_double(m.con_author_percent) << ',' << format_double(m.avg_subs_targeted) << ','
        << format_double(m.median_subs_targeted) << '\n';
}

void write_correlations_csv(std::ostream& out, std::span<const CorrelationEntry> entries) {
  csv::write_row(out, {"name", "n", "computable", "rho", "p_value"});
  for (const auto& e : entries) {
    out << e.name << ',' << e.result.n << ',' << (e.result.computable ? "true" : "false") << ',';
    if (e.result.computable) out << format_double(e.result.rho) << ',' << format_double(e.result.p_value);
    else out << ',';
    out << '\n';
  }
}

void write_rankings_csv(std::ostream& out, std::span<const RankRow> rows, std::string_view key) {
  csv::write_row(out, {"rank", "subreddit", std::string(key)});
  for (const auto& r : rows) out << r.rank << ',' << csv::escape(r.subreddit) << ',' << format_double(r.value) << '\n';
}

}  // namespace subconflict
