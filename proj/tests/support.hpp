// Shared helpers and brute-force oracles for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/coconflict.hpp"
#include "subconflict/corpus.hpp"
#include "subconflict/graph.hpp"
#include "subconflict/synth.hpp"
#include "subconflict/temporal.hpp"

namespace testing {

using namespace subconflict;

inline std::int64_t ts(int year, int month, int day = 15) {
  // days from civil, UTC noon
  const int y = month <= 2 ? year - 1 : year;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned mp = static_cast<unsigned>(month + (month > 2 ? -3 : 9));
  const unsigned doy = (153 * mp + 2) / 5 + static_cast<unsigned>(day) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  const std::int64_t days = static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
  return days * 86400 + 12 * 3600;
}

inline std::string record_json(const std::string& author, const std::string& sub, std::int64_t score,
                               std::int64_t created) {
  return "{\"author\":\"" + author + "\",\"subreddit\":\"" + sub + "\",\"score\":" + std::to_string(score) +
         ",\"created_utc\":" + std::to_string(created) + "}";
}

/// Random directed graph without self-loops.
inline ConflictGraph random_graph(std::mt19937_64& g, int nodes, double p) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<ConflictEdge> edges;
  for (int a = 0; a < nodes; ++a)
    for (int b = 0; b < nodes; ++b)
      if (a != b && u(g) < p) {
        const std::int64_t n = 5 + static_cast<std::int64_t>(u(g) * 40);
        const std::int64_t k = 1 + static_cast<std::int64_t>(u(g) * static_cast<double>(n - 1));
        edges.push_back({"n" + std::to_string(a), "n" + std::to_string(b), k, n,
                         static_cast<double>(k) / static_cast<double>(n), 4.0});
      }
  return ConflictGraph::from_edges(std::move(edges));
}

/// Pearson correlation of average ranks computed from scratch.
inline double brute_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Modularity straight from the definition, sum over all node pairs.
inline double brute_modularity(const UndirectedGraph& g, const std::vector<std::uint32_t>& c) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0));
  for (const auto& e : g.edges) A[e.a][e.b] = A[e.b][e.a] = e.weight;
  std::vector<double> k(n, 0);
  double two_m = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += A[i][j];
      two_m += A[i][j];
    }
  if (two_m == 0) return 0;
  double q = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += A[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

/// Best modularity over every set partition (restricted growth strings).
inline double brute_max_modularity(const UndirectedGraph& g) {
  const std::size_t n = g.nodes.size();
  if (n == 0) return 0;
  std::vector<std::uint32_t> a(n, 0), mx(n, 0);
  double best = -1;
  for (;;) {
    best = std::max(best, brute_modularity(g, a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
    for (std::size_t j = i; j < n; ++j) mx[j] = std::max(mx[j - 1], a[j]);
  }
  return best;
}

/// Two cliques of size p and q joined through `path` intermediate nodes (0 means one direct edge).
inline UndirectedGraph barbell(int p, int q, int path) {
  const int n = p + q + path;
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(std::string("v") + static_cast<char>('a' + i));
  std::vector<UndirectedGraph::Edge> edges;
  const auto add = [&](int a, int b) { edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 1.0, 0}); };
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) add(i, j);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) add(p + path + i, p + path + j);
  int prev = p - 1;
  for (int i = 0; i < path; ++i) {
    add(prev, p + i);
    prev = p + i;
  }
  add(prev, p + path);
  return UndirectedGraph::make(nodes, edges);
}

inline int scan_changes(const std::vector<TopTarget>& t) {
  int c = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const bool a = t[i].has_value(), b = t[i + 1].has_value();
    if (a != b || (a && *t[i] != *t[i + 1])) ++c;
  }
  return c;
}

}  // namespace testing

namespace testing {

struct Row {
  std::string author;
  std::string sub;
  std::int64_t pos = 0, neg = 0, neu = 0;
  int month = 1;
};

/// Aggregate table from explicit rows; duplicate keys are summed.
inline AggregateTable table_of(const std::vector<Row>& rows) {
  std::map<std::tuple<std::string, std::string, int>, PolarityCounts> m;
  for (const auto& r : rows) m[{r.author, r.sub, r.month}] += PolarityCounts{r.pos, r.neg, r.neu};
  AggregateTable t;
  for (const auto& [k, c] : m)
    if (!c.empty()) t.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
  return t;
}

/// Random activity over `subs` subreddits plus a default-style filler.
inline std::vector<Row> random_rows(std::mt19937_64& g, int authors, int subs, int months = 1) {
  std::uniform_int_distribution<int> cnt(0, 24), coin(0, 2), month(1, months);
  std::vector<Row> rows;
  for (int a = 0; a < authors; ++a) {
    const std::string name = "u" + std::to_string(100 + a);
    for (int s = 0; s < subs; ++s) {
      if (coin(g) == 0) continue;
      const int n = cnt(g);
      const int bias = coin(g);  // 0 friendly, 1 hostile, 2 mixed
      for (int i = 0; i < n; ++i) {
        Row r{name, "s" + std::to_string(s), 0, 0, 0, month(g)};
        const int roll = cnt(g);
        if (bias == 0) (roll < 18 ? r.pos : roll < 21 ? r.neg : r.neu) = 1;
        else if (bias == 1) (roll < 18 ? r.neg : roll < 21 ? r.pos : r.neu) = 1;
        else (roll < 11 ? r.pos : roll < 22 ? r.neg : r.neu) = 1;
        rows.push_back(r);
      }
    }
    rows.push_back({name, "AskReddit", 40 + cnt(g) * 3, cnt(g), 0, month(g)});
  }
  return rows;
}

}  // namespace testing

namespace testing {

/// P[more negative than positive draws] by enumerating all 3^n outcome sequences.
inline double enumerate_negative_probability(int n, double p_pos, double p_neg, double p_neu) {
  double total = 0;
  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  for (;;) {
    int pos = 0, neg = 0;
    double p = 1;
    for (int x : seq) {
      if (x == 0) { ++pos; p *= p_pos; }
      else if (x == 1) { ++neg; p *= p_neg; }
      else p *= p_neu;
    }
    if (neg > pos) total += p;
    std::size_t i = 0;
    while (i < seq.size() && seq[i] == 2) seq[i++] = 0;
    if (i == seq.size()) break;
    ++seq[i];
  }
  return total;
}

}  // namespace testing
