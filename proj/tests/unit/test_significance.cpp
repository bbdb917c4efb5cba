#include <doctest.h>

#include <cmath>
#include <sstream>

#include "subconflict/significance.hpp"
#include "support.hpp"

using namespace subconflict;
using testing::enumerate_negative_probability;
using testing::table_of;

TEST_SUITE("significance") {
  TEST_CASE("profile is the ratio of counts") {
    const auto p = MultinomialProfile::from_counts({80, 15, 5});
    CHECK(p.p_pos == 0.8);
    CHECK(p.p_neg == 0.15);
    CHECK(p.p_neu == 0.05);
    const auto q = MultinomialProfile::from_counts({0, 100, 0});
    CHECK(q.p_pos == 0);
    CHECK(q.p_neg == 1);
    CHECK(q.p_neu == 0);
  }

  TEST_CASE("profile uses only authors with significant presence") {
    const StatsIndex idx(table_of({{"a", "B", 8, 3, 1}, {"b", "B", 2, 2, 2}, {"c", "B", 0, 11, 0}, {"d", "C", 5, 0, 0}}));
    const auto act = idx.yearly();
    const auto p = estimate_profile(*idx.vocab().find_subreddit("B"), act, 10);
    CHECK(p.counts == PolarityCounts{8, 14, 1});
    CHECK_THROWS_AS(estimate_profile(*idx.vocab().find_subreddit("C"), act, 10), InputError);
  }

  TEST_CASE("enumeration oracle agrees with hand values") {
    CHECK(enumerate_negative_probability(3, 0.5, 0.5, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(enumerate_negative_probability(1, 0.2, 0.3, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
    // n = 2: neg>pos iff (neg,neg), (neg,neu), (neu,neg)
    CHECK(enumerate_negative_probability(2, 0.2, 0.3, 0.5) == doctest::Approx(0.09 + 2 * 0.15).epsilon(1e-15));
  }

  TEST_CASE("degenerate profiles") {
    std::mt19937_64 g(1);
    const std::vector<std::int64_t> n{1, 3, 12, 40};
    CHECK(simulate_negatives(n, MultinomialProfile::from_counts({0, 7, 0}), g) == 4);
    CHECK(simulate_negatives(n, MultinomialProfile::from_counts({7, 0, 0}), g) == 0);
    CHECK(simulate_negatives(n, MultinomialProfile::from_counts({0, 0, 7}), g) == 0);
  }

  TEST_CASE("simulated mean matches exact enumeration") {
    // (0.5, 0.5, 0) with three comments each: half the users come out negative
    const auto profile = MultinomialProfile::from_counts({1, 1, 0});
    const std::vector<std::int64_t> n(40, 3);
    std::mt19937_64 g(99);
    const int reps = 4000;
    double sum = 0;
    for (int r = 0; r < reps; ++r) sum += static_cast<double>(simulate_negatives(n, profile, g));
    const double mean = sum / reps;
    const double p = enumerate_negative_probability(3, 0.5, 0.5, 0);
    const double se = std::sqrt(40 * p * (1 - p) / reps);
    CHECK(std::abs(mean - 40 * p) < 4 * se);
  }

  TEST_CASE("std-zero rules") {
    SignificanceOptions o;
    const std::vector<std::int64_t> n(6, 12);
    auto r = test_edge(6, n, MultinomialProfile::from_counts({5, 0, 0}), o, "A", "B");
    CHECK(r.null_mean == 0);
    CHECK(r.null_std == 0);
    CHECK(std::isinf(r.z));
    CHECK(r.z > 0);
    CHECK(r.retained);
    r = test_edge(6, n, MultinomialProfile::from_counts({0, 5, 0}), o, "A", "B");
    CHECK(r.null_mean == 6);
    CHECK(std::isinf(r.z));
    CHECK(r.z < 0);
    CHECK_FALSE(r.retained);
  }

  TEST_CASE("z uses the sample standard deviation unless told otherwise") {
    const std::vector<std::int64_t> trials{1, 2, 3, 4};
    SignificanceOptions o;
    o.trials = 4;
    const auto r = score_trials(10, trials, o);
    CHECK(r.null_mean == 2.5);
    CHECK(r.null_std == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
    CHECK(r.z == doctest::Approx(7.5 / std::sqrt(5.0 / 3.0)).epsilon(1e-14));
    o.sample_std = false;
    CHECK(score_trials(10, trials, o).null_std == doctest::Approx(std::sqrt(1.25)).epsilon(1e-14));
  }

  TEST_CASE("retained exactly when z beats the threshold; monotone in n_actual") {
    const std::vector<std::int64_t> trials{2, 4, 4, 4, 5, 5, 7, 9};
    SignificanceOptions o;
    o.trials = 8;
    bool seen = false;
    for (std::int64_t k = 0; k <= 30; ++k) {
      const auto r = score_trials(k, trials, o);
      CHECK(r.retained == (r.z > o.z_threshold));
      if (seen) CHECK(r.retained);
      seen = seen || r.retained;
    }
    CHECK(seen);
  }

  TEST_CASE("configuration errors") {
    SignificanceOptions o;
    o.trials = 1;
    CHECK_THROWS_AS(o.validate(), ConfigError);
    const std::vector<std::int64_t> n{12};
    CHECK_THROWS_AS(test_edge(1, n, MultinomialProfile::from_counts({1, 1, 1}), o, "A", "B"), ConfigError);
  }

  TEST_CASE("seeded results repeat and depend on the edge") {
    SignificanceOptions o;
    const std::vector<std::int64_t> n(25, 11);
    const auto p = MultinomialProfile::from_counts({70, 25, 5});
    const auto a = test_edge(10, n, p, o, "A", "B");
    const auto b = test_edge(10, n, p, o, "A", "B");
    CHECK(a.null_mean == b.null_mean);
    CHECK(a.null_std == b.null_std);
    CHECK(a.z == b.z);
    o.seed += 1;
    const auto c = test_edge(10, n, p, o, "A", "B");
    CHECK((c.null_mean != a.null_mean || c.null_std != a.null_std));
  }

  TEST_CASE("filter_graph is thread-count invariant") {
    std::mt19937_64 g(17);
    const StatsIndex idx(table_of(testing::random_rows(g, 200, 8)));
    const auto act = idx.yearly();
    const auto q = qualified_authors(act, 100);
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    const auto con = controversial_authors(classify_all(q, act, 10, ex));
    const PresenceIndex common(act, q, 10);
    const auto cands = candidate_edges(con, common, 5);
    REQUIRE(cands.size() > 3);
    SignificanceOptions o;
    const auto one = filter_graph(cands, common, 10, o);
    o.threads = 4;
    const auto four = filter_graph(cands, common, 10, o);
    std::stringstream x, y;
    write_edge_tests_csv(x, one.tests, idx.vocab());
    write_edge_tests_csv(y, four.tests, idx.vocab());
    CHECK(x.str() == y.str());
    std::size_t kept = 0;
    for (const auto& t : one.tests) kept += t.result.retained;
    CHECK(one.graph.edges.size() == kept);
    CHECK(filter_graph({}, common, 10, o).graph.empty());
  }
}
