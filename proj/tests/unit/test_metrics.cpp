#include <doctest.h>

#include <cmath>

#include "subconflict/metrics.hpp"
#include "support.hpp"

using namespace subconflict;
using testing::table_of;

namespace {

ConflictGraph graph_of(std::vector<std::tuple<std::string, std::string, double>> es) {
  std::vector<ConflictEdge> edges;
  for (auto& [a, b, w] : es) edges.push_back({a, b, 1, 1, w, 5});
  return ConflictGraph::from_edges(std::move(edges));
}

const NodeMetrics& row(const std::vector<NodeMetrics>& m, const std::string& name) {
  for (const auto& r : m)
    if (r.subreddit == name) return r;
  FAIL("missing row " << name);
  return m.front();
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("single edge degrees") {
    const auto m = degree_metrics(graph_of({{"A", "B", 0.4}}));
    CHECK(row(m, "A").outdegree == 1);
    CHECK(row(m, "A").weighted_outdegree == 0.4);
    CHECK(row(m, "A").indegree == 0);
    CHECK(row(m, "A").avg_in_intensity == 0);
    CHECK(row(m, "B").indegree == 1);
    CHECK(row(m, "B").weighted_indegree == 0.4);
    CHECK(row(m, "B").avg_in_intensity == 0.4);
  }

  TEST_CASE("handshake holds on random graphs") {
    std::mt19937_64 g(31);
    for (int i = 0; i < 200; ++i) {
      const auto graph = testing::random_graph(g, 2 + i % 25, 0.05 + 0.004 * i);
      const auto m = degree_metrics(graph);
      std::int64_t in = 0, out = 0;
      double win = 0, wout = 0, wsum = 0;
      for (const auto& r : m) {
        in += r.indegree;
        out += r.outdegree;
        win += r.weighted_indegree;
        wout += r.weighted_outdegree;
        if (r.outdegree) CHECK(r.avg_out_intensity == doctest::Approx(r.weighted_outdegree / r.outdegree));
      }
      for (const auto& e : graph.edges) wsum += e.weight;
      CHECK(in == static_cast<std::int64_t>(graph.edges.size()));
      CHECK(out == in);
      CHECK(win == doctest::Approx(wsum).epsilon(1e-12));
      CHECK(wout == doctest::Approx(wsum).epsilon(1e-12));
    }
  }

  TEST_CASE("size and controversial-author statistics") {
    std::vector<testing::Row> rows;
    const std::vector<std::vector<std::string>> targets{{"T1"}, {"T1", "T2"}, {"T2", "T3"}, {"T1", "T2", "T3"}};
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto name = "c" + std::to_string(i);
      rows.push_back({name, "S", 20, 0, 0});
      for (const auto& t : targets[i]) rows.push_back({name, t, 0, 20, 0});
      rows.push_back({name, "AskReddit", 100, 0, 0});
    }
    for (int i = 0; i < 4; ++i) rows.push_back({"b" + std::to_string(i), "S", 11, 0, 0});
    rows.push_back({"small", "S", 10, 0, 0});
    const StatsIndex idx(table_of(rows));
    const auto act = idx.yearly();
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    const auto con = controversial_authors(classify_all(qualified_authors(act, 100), act, 10, ex));
    REQUIRE(con.size() == 4);
    const auto m = node_metrics(graph_of({{"S", "T1", 0.5}}), con, act, 10);
    const auto& s = row(m, "S");
    CHECK(s.size == 8);
    CHECK(s.n_con_authors == 4);
    CHECK(s.con_author_percent == 50.0);
    CHECK(s.avg_subs_targeted == 2.0);
    CHECK(s.median_subs_targeted == 2.0);
    CHECK(row(m, "T1").n_con_authors == 0);
    CHECK(row(m, "T1").size == 3);
  }

  TEST_CASE("reciprocity against a pair scan") {
    CHECK(reciprocity(graph_of({{"A", "B", 1}, {"B", "A", 1}})) == 1.0);
    CHECK(reciprocity(graph_of({{"A", "B", 1}})) == 0.0);
    CHECK(reciprocity(ConflictGraph{}) == 0.0);
    std::mt19937_64 g(5);
    for (int i = 0; i < 100; ++i) {
      const auto graph = testing::random_graph(g, 3 + i % 20, 0.2);
      if (graph.empty()) continue;
      std::size_t r = 0;
      for (const auto& e : graph.edges)
        for (const auto& f : graph.edges)
          if (e.source == f.target && e.target == f.source) ++r;
      CHECK(reciprocity(graph) == doctest::Approx(static_cast<double>(r) / graph.edges.size()).epsilon(1e-15));
    }
  }

  TEST_CASE("average ranks share ties") {
    const std::vector<double> v{10, 20, 20, 5, 20};
    CHECK(average_ranks(v) == std::vector<double>{2, 4, 4, 1, 4});
  }

  TEST_CASE("spearman basics") {
    const std::vector<double> x{1, 2, 3};
    CHECK(spearman(x, std::vector<double>{10, 20, 30}).rho == 1.0);
    CHECK(spearman(x, std::vector<double>{30, 20, 10}).rho == -1.0);
    CHECK_FALSE(spearman(x, std::vector<double>{4, 4, 4}).computable);
    CHECK_THROWS_AS(spearman(x, std::vector<double>{1, 2}), ConfigError);
    CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}), ConfigError);
    CHECK(std::isnan(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}).p_value));
  }

  TEST_CASE("spearman p-value uses the t approximation") {
    const auto r = spearman(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{2, 1, 4, 3, 5});
    CHECK(r.rho == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(r.p_value == doctest::Approx(0.10408803866182788).epsilon(1e-9));
  }

  TEST_CASE("spearman matches rank-then-Pearson and is transform invariant") {
    std::mt19937_64 g(77);
    std::uniform_int_distribution<int> len(3, 40), val(0, 9);
    for (int i = 0; i < 300; ++i) {
      const int n = len(g);
      std::vector<double> x, y;
      for (int j = 0; j < n; ++j) {
        x.push_back(val(g));
        y.push_back(val(g) * 0.5);
      }
      const auto r = spearman(x, y);
      if (!r.computable) continue;
      CHECK(std::abs(r.rho - testing::brute_spearman(x, y)) < 1e-12);
      std::vector<double> ex;
      for (double v : x) ex.push_back(std::exp(v) + 3);
      CHECK(std::abs(spearman(ex, y).rho - r.rho) < 1e-12);
      CHECK(spearman(x, x).rho == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("correlation report edge cases") {
    const auto two = graph_of({{"A", "B", 0.3}, {"B", "A", 0.3}});
    for (const auto& e : correlation_report(two, degree_metrics(two))) CHECK_FALSE(e.result.computable);
    const auto sym = graph_of({{"A", "B", 0.1}, {"B", "A", 0.1}, {"C", "D", 0.5}, {"D", "C", 0.5}, {"A", "C", 0.2},
                               {"C", "A", 0.2}, {"B", "D", 0.7}});
    const auto rep = correlation_report(sym, degree_metrics(sym));
    REQUIRE(rep.size() == 7);
    CHECK(rep[0].name == "reciprocated_intensity");
    CHECK(rep[0].result.computable);
    CHECK(rep[0].result.rho == 1.0);
    CHECK(rep[0].result.n == 6);
  }

  TEST_CASE("rankings sort descending with name tie-break") {
    std::vector<NodeMetrics> m(4);
    m[0].subreddit = "d";
    m[0].weighted_outdegree = 0.62;
    m[1].subreddit = "c";
    m[1].weighted_outdegree = 0.75;
    m[2].subreddit = "b";
    m[2].weighted_outdegree = 0.62;
    m[3].subreddit = "a";
    m[3].weighted_outdegree = 0.1;
    const auto r = rankings(m, "weighted_outdegree", 3);
    REQUIRE(r.size() == 3);
    CHECK(r[0].subreddit == "c");
    CHECK(r[1].subreddit == "b");
    CHECK(r[2].subreddit == "d");
    CHECK(r[0].rank == 1);
    CHECK(r[2].rank == 3);
    CHECK_THROWS_AS(rankings(m, "nonsense", 3), ConfigError);
  }

  TEST_CASE("rankings agree with a naive full sort and honour the author floor") {
    std::mt19937_64 g(2);
    std::uniform_int_distribution<int> v(0, 6);
    std::vector<NodeMetrics> m(50);
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i].subreddit = "s" + std::to_string(i);
      m[i].con_author_percent = v(g) * 10;
      m[i].n_con_authors = v(g) * 5;
    }
    for (const auto& key : kRankKeys) {
      auto naive = m;
      std::sort(naive.begin(), naive.end(), [&](const auto& a, const auto& b) {
        const double x = metric_value(a, key), y = metric_value(b, key);
        return x != y ? x > y : a.subreddit < b.subreddit;
      });
      const auto r = rankings(m, key, m.size());
      REQUIRE(r.size() == m.size());
      for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].subreddit == naive[i].subreddit);
    }
    for (const auto& r : rankings(m, "con_author_percent", 50, 20)) CHECK(r.value >= 0);
    std::size_t eligible = 0;
    for (const auto& x : m) eligible += x.n_con_authors >= 20;
    CHECK(rankings(m, "con_author_percent", 50, 20).size() == eligible);
  }
}
