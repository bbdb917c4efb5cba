#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/conflict.hpp"
#include "subconflict/graph.hpp"

namespace subconflict {

/// Empirical distribution of comment polarity in one subreddit. Sampling
/// uses the integer counts, so the distribution is exact.
struct MultinomialProfile {
  PolarityCounts counts;
  double p_pos = 0;
  double p_neg = 0;
  double p_neu = 0;

  static MultinomialProfile from_counts(const PolarityCounts& counts);
  Polarity draw(std::mt19937_64& rng) const;
};

/// Polarity counts of all comments in `sub` by authors with more than
/// `min_sub_comments` comments there. Throws InputError when there are none.
MultinomialProfile estimate_profile(SubId sub, const Activity& activity, std::int64_t min_sub_comments);

/// Draws n_i comments per user and counts users with more negative than
/// positive draws.
std::int64_t simulate_negatives(std::span<const std::int64_t> comment_counts, const MultinomialProfile& profile,
                                std::mt19937_64& rng);

struct SignificanceOptions {
  int trials = 30;
  double z_threshold = 3.0;
  /// n-1 denominator for the null standard deviation; false uses n.
  bool sample_std = true;
  std::uint64_t seed = 20160101;
  unsigned threads = 1;

  void validate() const;
};

struct EdgeTestResult {
  std::int64_t n_actual = 0;
  double null_mean = 0;
  double null_std = 0;
  double z = 0;
  bool retained = false;
};

/// Monte-Carlo z-test of one directed candidate. Trial t uses an RNG stream
/// keyed by (seed, source name, target name, t).
EdgeTestResult test_edge(std::int64_t n_actual, std::span<const std::int64_t> comment_counts,
                         const MultinomialProfile& profile, const SignificanceOptions& options,
                         std::string_view source_name, std::string_view target_name);

/// Null statistics and the retention decision from finished trial counts.
EdgeTestResult score_trials(std::int64_t n_actual, std::span<const std::int64_t> trial_counts,
                            const SignificanceOptions& options);

struct TestedCandidate {
  ConflictCandidate candidate;
  EdgeTestResult result;
};

struct FilterOutcome {
  std::vector<TestedCandidate> tests;  // same order as the input candidates
  ConflictGraph graph;
};

/// Tests every candidate. Common users and their comment counts in the
/// target come from `common_index`; the target profile from the index's
/// activity at `min_sub_comments`.
FilterOutcome filter_graph(std::span<const ConflictCandidate> candidates, const PresenceIndex& common_index,
                           std::int64_t min_sub_comments, const SignificanceOptions& options);

inline const std::vector<std::string> kEdgeTestsHeader{"source", "target", "k", "n_common", "weight",
                                                       "null_mean", "null_std", "z", "retained"};
void write_edge_tests_csv(std::ostream& out, std::span<const TestedCandidate> tests, const Vocabulary& vocab);

}  // namespace subconflict
