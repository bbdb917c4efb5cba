#include "subconflict/temporal.hpp"

#include <algorithm>
#include <ostream>

#include "subconflict/conflict.hpp"
#include "subconflict/format.hpp"
#include "subconflict/parallel.hpp"
#include "subconflict/rng.hpp"

namespace subconflict {

namespace {

ConflictGraph month_graph(const StatsIndex& index, const Cohort& cohort, const TemporalOptions& options, int month) {
  const Activity activity = index.monthly(month);
  const Vocabulary& vocab = activity.vocab();
  const ExcludedSet excluded(vocab, options.excluded);

  std::vector<bool> allowed(vocab.subreddit_count(), false);
  for (const auto& n : cohort.nodes)
    if (auto id = vocab.find_subreddit(n)) allowed[*id] = true;

  std::vector<HomeAssignment> homes;
  if (options.mode == MonthlyHomeMode::Reclassify) {
    std::vector<AuthorId> authors;
    for (const auto& h : cohort.controversial) authors.push_back(h.author);
    homes = controversial_authors(classify_all(authors, activity, options.monthly_presence, excluded));
  } else {
    for (const auto& h : cohort.controversial) {
      const auto present = [&](SubId s) {
        const auto* c = activity.find(h.author, s);
        return c && c->total() > options.monthly_presence;
      };
      HomeAssignment m{h.author, {}, {}};
      std::copy_if(h.social.begin(), h.social.end(), std::back_inserter(m.social), present);
      std::copy_if(h.antisocial.begin(), h.antisocial.end(), std::back_inserter(m.antisocial), present);
      if (m.controversial()) homes.push_back(std::move(m));
    }
  }

  const PresenceIndex common(activity, cohort.qualified, options.monthly_presence);
  const auto candidates = candidate_edges(homes, common, options.min_pair_authors, &allowed);
  SignificanceOptions sig = options.significance;
  sig.seed = rng::mix(sig.seed, static_cast<std::uint64_t>(month));
  sig.threads = 1;
  return filter_graph(candidates, common, options.monthly_presence, sig).graph;
}

}  // namespace

MonthlySeries monthly_graphs(const StatsIndex& index, const Cohort& cohort, const TemporalOptions& options) {
  if (options.first_month < 1 || options.last_month > 12 || options.first_month > options.last_month)
    throw ConfigError("temporal month range must satisfy 1 <= first <= last <= 12");
  MonthlySeries series;
  const auto count = static_cast<std::size_t>(options.last_month - options.first_month + 1);
  parallel_for(count, options.significance.threads, [&](std::size_t i) {
    const int month = options.first_month + static_cast<int>(i);
    series.months[month - 1] = month_graph(index, cohort, options, month);
  });
  return series;
}

TopTarget top_target(const ConflictGraph& graph, const std::string& source) {
  const ConflictEdge* best = nullptr;
  for (const auto& e : graph.edges) {
    if (e.source != source) continue;
    if (!best || e.weight > best->weight || (e.weight == best->weight && e.target < best->target)) best = &e;
  }
  return best ? TopTarget(best->target) : std::nullopt;
}

int change_count(std::span<const TopTarget> track) {
  int changes = 0;
  for (std::size_t i = 1; i < track.size(); ++i)
    if (track[i] != track[i - 1]) ++changes;
  return changes;
}

std::vector<FocusTrack> focus_tracks(const ConflictGraph& yearly, const MonthlySeries& series,
                                     std::int64_t min_yearly_targets) {
  const auto degrees = degree_metrics(yearly);
  std::vector<FocusTrack> out;
  for (const auto& m : degrees) {
    if (m.outdegree < min_yearly_targets) continue;
    FocusTrack t;
    t.source = m.subreddit;
    for (std::size_t i = 0; i < 12; ++i) t.top[i] = top_target(series.months[i], t.source);
    t.changes = change_count(t.top);
    out.push_back(std::move(t));
  }
  return out;
}

std::array<std::vector<RankRow>, 12> monthly_rankings(const MonthlySeries& series, std::string_view key,
                                                      std::size_t top_n) {
  std::array<std::vector<RankRow>, 12> out;
  for (std::size_t i = 0; i < 12; ++i) out[i] = rankings(degree_metrics(series.months[i]), key, top_n);
  return out;
}

std::vector<RankTrajectory> rank_trajectories(const MonthlySeries& series, std::span<const std::string> nodes,
                                              std::string_view key) {
  std::vector<RankTrajectory> out;
  for (const auto& n : nodes) out.push_back({n, {}});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.subreddit < b.subreddit; });
  for (std::size_t i = 0; i < 12; ++i) {
    const auto metrics = degree_metrics(series.months[i]);
    for (const auto& row : rankings(metrics, key, metrics.size())) {
      auto it = std::lower_bound(out.begin(), out.end(), row.subreddit,
                                 [](const RankTrajectory& t, const std::string& s) { return t.subreddit < s; });
      if (it != out.end() && it->subreddit == row.subreddit) it->rank[i] = row.rank;
    }
  }
  return out;
}

void write_focus_csv(std::ostream& out, std::span<const FocusTrack> tracks) {
  std::vector<std::string> header{"source"};
  for (int m = 1; m <= 12; ++m) header.push_back("m" + std::to_string(m));
  header.push_back("change_count");
  csv::write_row(out, header);
  for (const auto& t : tracks) {
    out << csv::escape(t.source);
    for (const auto& top : t.top) out << ',' << (top ? csv::escape(*top) : "");
    out << ',' << t.changes << '\n';
  }
}

void write_trajectories_csv(std::ostream& out, std::span<const RankTrajectory> rows) {
  std::vector<std::string> header{"subreddit"};
  for (int m = 1; m <= 12; ++m) header.push_back("m" + std::to_string(m));
  csv::write_row(out, header);
  for (const auto& r : rows) {
    out << csv::escape(r.subreddit);
    for (auto rank : r.rank) {
      out << ',';
      if (rank) out << rank;
    }
    out << '\n';
  }
}

void write_monthly_rankings_csv(std::ostream& out, const std::array<std::vector<RankRow>, 12>& tables,
                                std::string_view key) {
  csv::write_row(out, {"month", "rank", "subreddit", std::string(key)});
  for (std::size_t i = 0; i < 12; ++i)
    for (const auto& r : tables[i])
      out << (i + 1) << ',' << r.rank << ',' << csv::escape(r.subreddit) << ',' << format_double(r.value) << '\n';
}

}  // namespace subconflict
