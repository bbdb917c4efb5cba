#include "subconflict/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "subconflict/format.hpp"
#include "subconflict/parallel.hpp"
#include "subconflict/rng.hpp"

namespace subconflict {

MultinomialProfile MultinomialProfile::from_counts(const PolarityCounts& counts) {
  if (counts.empty()) throw InputError("cannot build a polarity profile from zero comments");
  const double n = static_cast<double>(counts.total());
  return {counts, counts.pos / n, counts.neg / n, counts.neu / n};
}

Polarity MultinomialProfile::draw(std::mt19937_64& rng) const {
  const auto u = static_cast<std::int64_t>(rng::uniform_below(rng, static_cast<std::uint64_t>(counts.total())));
  if (u < counts.pos) return Polarity::Positive;
  if (u < counts.pos + counts.neg) return Polarity::Negative;
  return Polarity::Neutral;
}

MultinomialProfile estimate_profile(SubId sub, const Activity& activity, std::int64_t min_sub_comments) {
  PolarityCounts sum;
  for (AuthorId a = 0; a < activity.author_count(); ++a) {
    const auto* c = activity.find(a, sub);
    if (c && c->total() > min_sub_comments) sum += *c;
  }
  if (sum.empty())
    throw InputError("no comments from authors with significant presence in '" + activity.vocab().subreddit(sub) + "'");
  return MultinomialProfile::from_counts(sum);
}

std::int64_t simulate_negatives(std::span<const std::int64_t> comment_counts, const MultinomialProfile& profile,
                                std::mt19937_64& rng) {
  std::int64_t negative_users = 0;
  for (const std::int64_t n : comment_counts) {
    std::int64_t pos = 0, neg = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      switch (profile.draw(rng)) {
        case Polarity::Positive: ++pos; break;
        case Polarity::Negative: ++neg; break;
        case Polarity::Neutral: break;
      }
    }
    if (neg > pos) ++negative_users;
  }
  return negative_users;
}

void SignificanceOptions::validate() const {
  if (trials < 2) throw ConfigError("significance trials must be at least 2");
  if (!std::isfinite(z_threshold)) throw ConfigError("z threshold must be finite");
}

EdgeTestResult score_trials(std::int64_t n_actual, std::span<const std::int64_t> trial_counts,
                            const SignificanceOptions& options) {
  options.validate();
  SUBCONFLICT_ASSERT(trial_counts.size() == static_cast<std::size_t>(options.trials), "trial count mismatch");
  const double n = static_cast<double>(trial_counts.size());
  double mean = 0;
  for (auto c : trial_counts) mean += static_cast<double>(c);
  mean /= n;
  double ss = 0;
  for (auto c : trial_counts) ss += (c - mean) * (c - mean);
  const double sd = std::sqrt(ss / (options.sample_std ? n - 1 : n));

  EdgeTestResult r;
  r.n_actual = n_actual;
  r.null_mean = mean;
  r.null_std = sd;
  const double actual = static_cast<double>(n_actual);
  if (sd == 0) {
    r.z = actual > mean ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    r.retained = actual > mean;
  } else {
    r.z = (actual - mean) / sd;
    r.retained = r.z > options.z_threshold;
  }
  return r;
}

EdgeTestResult test_edge(std::int64_t n_actual, std::span<const std::int64_t> comment_counts,
                         const MultinomialProfile& profile, const SignificanceOptions& options,
                         std::string_view source_name, std::string_view target_name) {
  options.validate();
  std::vector<std::int64_t> trial_counts(static_cast<std::size_t>(options.trials));
  for (int t = 0; t < options.trials; ++t) {
    std::mt19937_64 rng(rng::stream_seed(options.seed, source_name, target_name, static_cast<std::uint64_t>(t)));
    trial_counts[t] = simulate_negatives(comment_counts, profile, rng);
  }
  return score_trials(n_actual, trial_counts, options);
}

FilterOutcome filter_graph(std::span<const ConflictCandidate> candidates, const PresenceIndex& common_index,
                           std::int64_t min_sub_comments, const SignificanceOptions& options) {
  options.validate();
  const Activity& activity = common_index.activity();
  const Vocabulary& vocab = activity.vocab();

  // one profile per distinct target
  std::vector<SubId> targets;
  for (const auto& c : candidates) targets.push_back(c.target);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::vector<PolarityCounts> per_sub(vocab.subreddit_count());
  for (AuthorId a = 0; a < activity.author_count(); ++a)
    for (const auto& p : activity.of(a))
      if (p.counts.total() > min_sub_comments) per_sub[p.sub] += p.counts;
  std::vector<MultinomialProfile> profiles;
  profiles.reserve(targets.size());
  for (SubId t : targets) {
    if (per_sub[t].empty())
      throw InputError("no comments from authors with significant presence in '" + vocab.subreddit(t) + "'");
    profiles.push_back(MultinomialProfile::from_counts(per_sub[t]));
  }

  FilterOutcome out;
  out.tests.resize(candidates.size());
  parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
    const auto& c = candidates[i];
    const auto common = common_index.common(c.source, c.target);
    SUBCONFLICT_ASSERT(static_cast<std::int64_t>(common.size()) == c.n_common,
                       "candidate n_common disagrees with the presence index");
    std::vector<std::int64_t> counts;
    counts.reserve(common.size());
    for (AuthorId u : common) counts.push_back(activity.find(u, c.target)->total());
    const auto t = static_cast<std::size_t>(std::lower_bound(targets.begin(), targets.end(), c.target) - targets.begin());
    out.tests[i] = {c, test_edge(c.k, counts, profiles[t], options, vocab.subreddit(c.source), vocab.subreddit(c.target))};
  });

  std::vector<ConflictEdge> kept;
  for (const auto& t : out.tests) {
    if (!t.result.retained) continue;
    const auto& c = t.candidate;
    kept.push_back({vocab.subreddit(c.source), vocab.subreddit(c.target), c.k, c.n_common, c.weight(), t.result.z});
  }
  out.graph = ConflictGraph::from_edges(std::move(kept));
  return out;
}

void write_edge_tests_csv(std::ostream& out, std::span<const TestedCandidate> tests, const Vocabulary& vocab) {
  csv::write_row(out, kEdgeTestsHeader);
  for (const auto& [c, r] : tests)
    out << csv::escape(vocab.subreddit(c.source)) << ',' << csv::escape(vocab.subreddit(c.target)) << ',' << c.k << ','
        << c.n_common << ',' << format_double(c.weight()) << ',' << format_double(r.null_mean) << ','
        << format_double(r.null_std) << ',' << format_double(r.z) << ',' << (r.retained ? "true" : "false") << '\n';
}

}  // namespace subconflict
