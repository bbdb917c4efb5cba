#include "subconflict/synth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "subconflict/rng.hpp"

namespace subconflict::synth {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Serialization

namespace {

template <class T>
void get_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

json to_j(const Scenario& s) {
  json subs = json::array();
  for (const auto& x : s.subreddits) subs.push_back({{"name", x.name}, {"p_pos", x.p_pos}, {"p_neg", x.p_neg}});
  json bg = json::array();
  for (const auto& c : s.background)
    bg.push_back({{"prefix", c.prefix},
                  {"authors", c.authors},
                  {"pool", c.pool},
                  {"subreddits_per_author", c.subreddits_per_author},
                  {"min_comments", c.min_comments},
                  {"max_comments", c.max_comments},
                  {"filler_comments", c.filler_comments},
                  {"enforce_design", c.enforce_design}});
  json cf = json::array();
  for (const auto& c : s.conflicts) {
    json j{{"source", c.source},
           {"target", c.target},
           {"authors", c.authors},
           {"comments_source", c.comments_source},
           {"comments_target", c.comments_target},
           {"source_rate", c.source_rate},
           {"target_rate", c.target_rate},
           {"months", c.months},
           {"prefix", c.prefix}};
    if (c.filler_comments) j["filler_comments"] = *c.filler_comments;
    cf.push_back(std::move(j));
  }
  return {{"year", s.year},
          {"seed", s.seed},
          {"filler_subreddit", s.filler_subreddit},
          {"thresholds",
           {{"min_total_comments", s.thresholds.min_total_comments},
            {"min_sub_comments", s.thresholds.min_sub_comments},
            {"min_pair_authors", s.thresholds.min_pair_authors},
            {"monthly_presence", s.thresholds.monthly_presence}}},
          {"subreddits", subs},
          {"background", bg},
          {"conflicts", cf}};
}

Scenario from_j(const json& j) {
  Scenario s;
  get_opt(j, "year", s.year);
  get_opt(j, "seed", s.seed);
  get_opt(j, "filler_subreddit", s.filler_subreddit);
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    get_opt(t, "min_total_comments", s.thresholds.min_total_comments);
    get_opt(t, "min_sub_comments", s.thresholds.min_sub_comments);
    get_opt(t, "min_pair_authors", s.thresholds.min_pair_authors);
    get_opt(t, "monthly_presence", s.thresholds.monthly_presence);
  }
  for (const auto& x : j.value("subreddits", json::array())) {
    SubredditSpec sub;
    x.at("name").get_to(sub.name);
    get_opt(x, "p_pos", sub.p_pos);
    get_opt(x, "p_neg", sub.p_neg);
    s.subreddits.push_back(std::move(sub));
  }
  for (const auto& x : j.value("background", json::array())) {
    BackgroundCohort c;
    get_opt(x, "prefix", c.prefix);
    get_opt(x, "authors", c.authors);
    get_opt(x, "pool", c.pool);
    get_opt(x, "subreddits_per_author", c.subreddits_per_author);
    get_opt(x, "min_comments", c.min_comments);
    get_opt(x, "max_comments", c.max_comments);
    get_opt(x, "filler_comments", c.filler_comments);
    get_opt(x, "enforce_design", c.enforce_design);
    s.background.push_back(std::move(c));
  }
  for (const auto& x : j.value("conflicts", json::array())) {
    PlantedConflict c;
    x.at("source").get_to(c.source);
    x.at("target").get_to(c.target);
    get_opt(x, "authors", c.authors);
    get_opt(x, "comments_source", c.comments_source);
    get_opt(x, "comments_target", c.comments_target);
    get_opt(x, "source_rate", c.source_rate);
    get_opt(x, "target_rate", c.target_rate);
    get_opt(x, "months", c.months);
    get_opt(x, "prefix", c.prefix);
    if (x.contains("filler_comments")) c.filler_comments = x.at("filler_comments").get<int>();
    s.conflicts.push_back(std::move(c));
  }
  return s;
}

std::string default_prefix(const PlantedConflict& c) {
  return c.prefix.empty() ? c.source + "_vs_" + c.target : c.prefix;
}

std::string author_name(const std::string& prefix, int i) {
  std::ostringstream os;
  os << prefix << '_' << std::setw(3) << std::setfill('0') << i;
  return os.str();
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  try {
    return from_j(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
}

std::string scenario_to_json(const Scenario& scenario) { return to_j(scenario).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Validation

void Scenario::validate() const {
  const auto fail = [](const std::string& m) { throw ConfigError("infeasible scenario: " + m); };
  if (year < 1970 || year > 9999) fail("year out of range");
  std::set<std::string> names;
  for (const auto& s : subreddits) {
    if (s.name.empty()) fail("subreddit with empty name");
    if (!names.insert(s.name).second) fail("duplicate subreddit '" + s.name + "'");
    if (s.p_pos < 0 || s.p_neg < 0 || s.p_pos + s.p_neg > 1 + 1e-12) fail("bad rates for '" + s.name + "'");
  }
  if (!names.count(filler_subreddit)) fail("filler subreddit '" + filler_subreddit + "' is not declared");
  const auto& t = thresholds;
  if (t.min_total_comments < 0 || t.min_sub_comments < 0 || t.min_pair_authors < 1 || t.monthly_presence < 0)
    fail("thresholds must be non-negative");

  std::set<std::string> prefixes;
  for (const auto& c : background) {
    if (c.authors < 0) fail("negative author count in cohort '" + c.prefix + "'");
    if (!prefixes.insert(c.prefix).second) fail("duplicate cohort prefix '" + c.prefix + "'");
    const std::size_t pool_size = c.pool.empty() ? subreddits.size() - 1 : c.pool.size();
    for (const auto& p : c.pool) {
      if (!names.count(p)) fail("cohort '" + c.prefix + "' uses unknown subreddit '" + p + "'");
      if (p == filler_subreddit) fail("cohort '" + c.prefix + "' pool contains the filler subreddit");
    }
    if (c.subreddits_per_author < 0 || static_cast<std::size_t>(c.subreddits_per_author) > pool_size)
      fail("cohort '" + c.prefix + "' needs more subreddits than its pool holds");
    if (c.min_comments < 1 || c.max_comments < c.min_comments) fail("cohort '" + c.prefix + "' comment range");
    if (c.filler_comments < 0) fail("cohort '" + c.prefix + "' negative filler");
    if (c.enforce_design) {
      for (const auto& s : subreddits) {
        const bool in_pool = c.pool.empty() ? s.name != filler_subreddit
                                            : std::find(c.pool.begin(), c.pool.end(), s.name) != c.pool.end();
        if (in_pool && s.p_pos == s.p_neg)
          fail("cohort '" + c.prefix + "' enforces design over balanced subreddit '" + s.name + "'");
        if (in_pool && std::max(s.p_pos, s.p_neg) == 0)
          fail("cohort '" + c.prefix + "' enforces design over all-neutral subreddit '" + s.name + "'");
      }
    }
  }

  // planted roles per author prefix must not contradict each other
  std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> roles;
  for (const auto& c : conflicts) {
    const std::string label = c.source + " -> " + c.target;
    if (!names.count(c.source) || !names.count(c.target)) fail("conflict " + label + " uses an unknown subreddit");
    if (c.source == c.target) fail("conflict " + label + " is a self-loop");
    if (c.source == filler_subreddit || c.target == filler_subreddit) fail("conflict " + label + " uses the filler");
    if (c.authors < 1) fail("conflict " + label + " needs at least one author");
    if (c.comments_source <= t.min_sub_comments || c.comments_target <= t.min_sub_comments)
      fail("conflict " + label + ": planted authors need more than " + std::to_string(t.min_sub_comments) +
           " comments on each side");
    if (!(c.source_rate > 1.0 / 3 && c.source_rate <= 1) || !(c.target_rate > 1.0 / 3 && c.target_rate <= 1))
      fail("conflict " + label + ": rates must lie in (1/3, 1]");
    if (c.months.empty()) fail("conflict " + label + " has no months");
    for (int m : c.months)
      if (m < 1 || m > 12) fail("conflict " + label + " has month out of range");
    if (std::set<int>(c.months.begin(), c.months.end()).size() != c.months.size())
      fail("conflict " + label + " repeats a month");
    if (c.filler_comments && *c.filler_comments < 0) fail("conflict " + label + " negative filler");
    const auto prefix = default_prefix(c);
    if (prefixes.count(prefix)) fail("conflict " + label + " reuses a cohort prefix");
    auto& [social, anti] = roles[prefix];
    social.insert(c.source);
    anti.insert(c.target);
  }
  for (const auto& [prefix, r] : roles)
    for (const auto& s : r.first)
      if (r.second.count(s)) fail("authors '" + prefix + "' are designed both social and anti-social in '" + s + "'");
}

// ---------------------------------------------------------------------------
// Generation

namespace {

struct Rates {
  double pos, neg;
};

Polarity draw(std::mt19937_64& g, Rates r) {
  const double u = rng::uniform01(g);
  if (u < r.pos) return Polarity::Positive;
  if (u < r.pos + r.neg) return Polarity::Negative;
  return Polarity::Neutral;
}

std::int64_t score_for(std::mt19937_64& g, Polarity p) {
  switch (p) {
    case Polarity::Positive: return 1 + static_cast<std::int64_t>(rng::uniform_below(g, 25));
    case Polarity::Negative: return -1 - static_cast<std::int64_t>(rng::uniform_below(g, 12));
    case Polarity::Neutral: return 0;
  }
  return 0;
}

enum class Majority { Positive, Negative, Any };

bool satisfies(const std::vector<Polarity>& block, Majority want) {
  if (want == Majority::Any) return true;
  std::int64_t pos = 0, neg = 0;
  for (auto p : block) {
    pos += p == Polarity::Positive;
    neg += p == Polarity::Negative;
  }
  return want == Majority::Positive ? pos > neg : neg > pos;
}

std::vector<Polarity> draw_block(std::mt19937_64& g, Rates r, std::size_t n, Majority want) {
  std::vector<Polarity> block(n);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    for (auto& p : block) p = draw(g, r);
    if (satisfies(block, want)) return block;
  }
  throw ConfigError("infeasible scenario: cannot realise a designed majority");
}

class Generator {
 public:
  explicit Generator(const Scenario& s) : s_(s), rng_(rng::mix(s.seed, 0x5ca1ab1eull)) {
    for (const auto& sub : s.subreddits) rates_[sub.name] = {sub.p_pos, sub.p_neg};
  }

  GeneratedCorpus run() {
    for (const auto& c : s_.background) background(c);
    for (const auto& c : s_.conflicts) planted(c);
    add_planted_filler();
    // shuffle so the stream order carries no structure
    for (std::size_t i = out_.size(); i > 1; --i) std::swap(out_[i - 1], out_[rng::uniform_below(rng_, i)]);
    for (std::size_t i = 0; i < out_.size(); ++i) out_[i].comment_id = "c" + std::to_string(i);
    GeneratedCorpus g;
    g.comments = std::move(out_);
    g.truth = truth();
    return g;
  }

 private:
  using MonthCounts = std::array<std::int64_t, 12>;

  void emit(const std::string& author, const std::string& sub, int month, Polarity p) {
    using namespace std::chrono;
    const year_month ym{std::chrono::year{s_.year}, std::chrono::month{static_cast<unsigned>(month)}};
    const sys_days first{ym / 1};
    const sys_days last{ym / std::chrono::last};
    const auto days = static_cast<std::uint64_t>((last - first).count() + 1);
    const auto day = first + std::chrono::days{static_cast<long>(rng::uniform_below(rng_, days))};
    const std::int64_t t = duration_cast<seconds>(day.time_since_epoch()).count() +
                           static_cast<std::int64_t>(rng::uniform_below(rng_, 86400));
    out_.push_back({author, sub, score_for(rng_, p), t, {}});
    ++counts_[author][sub][month - 1];
  }

  int random_month() { return 1 + static_cast<int>(rng::uniform_below(rng_, 12)); }

  void background(const BackgroundCohort& c) {
    std::vector<std::string> pool = c.pool;
    if (pool.empty())
      for (const auto& sub : s_.subreddits)
        if (sub.name != s_.filler_subreddit) pool.push_back(sub.name);
    for (int i = 0; i < c.authors; ++i) {
      const auto author = author_name(c.prefix, i);
      std::vector<std::string> chosen = pool;
      for (std::size_t k = 0; k < static_cast<std::size_t>(c.subreddits_per_author); ++k)
        std::swap(chosen[k], chosen[k + rng::uniform_below(rng_, chosen.size() - k)]);
      chosen.resize(static_cast<std::size_t>(c.subreddits_per_author));
      std::sort(chosen.begin(), chosen.end());
      for (const auto& sub : chosen) {
        const auto n = static_cast<std::size_t>(c.min_comments) +
                       rng::uniform_below(rng_, static_cast<std::uint64_t>(c.max_comments - c.min_comments + 1));
        const Rates r = rates_.at(sub);
        Majority want = Majority::Any;
        if (c.enforce_design) {
          want = r.pos > r.neg ? Majority::Positive : Majority::Negative;
          if (static_cast<std::int64_t>(n) > s_.thresholds.min_sub_comments)
            (want == Majority::Positive ? designed_[author].first : designed_[author].second).insert(sub);
        }
        for (auto p : draw_block(rng_, r, n, want)) emit(author, sub, random_month(), p);
      }
      const Rates fr = rates_.at(s_.filler_subreddit);
      for (int k = 0; k < c.filler_comments; ++k) emit(author, s_.filler_subreddit, random_month(), draw(rng_, fr));
      if (c.enforce_design) designed_[author];  // designed, possibly without homes
    }
  }

  // Comments spread round-robin over `months`; blocks above the monthly
  // presence threshold carry the designed majority month by month.
  void planted_side(const std::string& author, const std::string& sub, int comments, Rates r, Majority want,
                    const std::vector<int>& months) {
    std::vector<int> per_month(12, 0);
    for (int j = 0; j < comments; ++j) ++per_month[months[static_cast<std::size_t>(j) % months.size()] - 1];
    for (;;) {
      std::vector<std::pair<int, Polarity>> drawn;
      std::vector<Polarity> all;
      for (int m = 1; m <= 12; ++m) {
        const auto n = static_cast<std::size_t>(per_month[m - 1]);
        if (n == 0) continue;
        const bool strict = static_cast<std::int64_t>(n) > s_.thresholds.monthly_presence;
        for (auto p : draw_block(rng_, r, n, strict ? want : Majority::Any)) {
          drawn.emplace_back(m, p);
          all.push_back(p);
        }
      }
      if (!satisfies(all, want)) continue;
      for (const auto& [m, p] : drawn) emit(author, sub, m, p);
      return;
    }
  }

  void planted(const PlantedConflict& c) {
    const auto prefix = default_prefix(c);
    const double other_s = (1 - c.source_rate) / 2;
    const double other_t = (1 - c.target_rate) / 2;
    for (int i = 0; i < c.authors; ++i) {
      const auto author = author_name(prefix, i);
      planted_side(author, c.source, c.comments_source, {c.source_rate, other_s}, Majority::Positive, c.months);
      planted_side(author, c.target, c.comments_target, {other_t, c.target_rate}, Majority::Negative, c.months);
      designed_[author].first.insert(c.source);
      designed_[author].second.insert(c.target);
      auto [it, fresh] = planted_filler_.try_emplace(author, -1);
      if (c.filler_comments) it->second = std::max(it->second, *c.filler_comments);
    }
  }

  void add_planted_filler() {
    const Rates fr = rates_.at(s_.filler_subreddit);
    for (const auto& [author, explicit_filler] : planted_filler_) {
      std::int64_t have = 0;
      for (const auto& [sub, m] : counts_[author]) have += std::accumulate(m.begin(), m.end(), std::int64_t{0});
      std::int64_t need = explicit_filler >= 0 ? explicit_filler
                                               : std::max<std::int64_t>(0, s_.thresholds.min_total_comments + 5 - have);
      for (std::int64_t k = 0; k < need; ++k) emit(author, s_.filler_subreddit, random_month(), draw(rng_, fr));
    }
  }

  static std::int64_t sum(const MonthCounts& m) { return std::accumulate(m.begin(), m.end(), std::int64_t{0}); }

  GroundTruth truth() const {
    const auto& t = s_.thresholds;
    GroundTruth gt;
    std::set<std::string> qualified;
    for (const auto& [author, subs] : counts_) {
      std::int64_t total = 0;
      for (const auto& [sub, m] : subs) total += sum(m);
      if (total > t.min_total_comments) qualified.insert(author);
    }
    // presence sets per subreddit, yearly and monthly
    std::map<std::string, std::set<std::string>> present;
    std::array<std::map<std::string, std::set<std::string>>, 12> present_month;
    for (const auto& author : qualified) {
      for (const auto& [sub, m] : counts_.at(author)) {
        if (sum(m) > t.min_sub_comments) present[sub].insert(author);
        for (int i = 0; i < 12; ++i)
          if (m[i] > t.monthly_presence) present_month[i][sub].insert(author);
      }
    }
    const auto overlap = [](const std::set<std::string>& a, const std::set<std::string>& b) {
      std::int64_t n = 0;
      for (const auto& x : a) n += b.count(x);
      return n;
    };
    std::vector<std::string> sub_names;
    for (const auto& [sub, _] : present) sub_names.push_back(sub);
    for (const auto& a : sub_names)
      for (const auto& b : sub_names)
        if (a != b) {
          const auto n = overlap(present[a], present[b]);
          if (n > 0) gt.n_common[{a, b}] = n;
        }

    std::map<std::pair<std::string, std::string>, std::int64_t> k;
    for (const auto& [author, roles] : designed_) {
      if (!qualified.count(author)) continue;
      if (!roles.first.empty() || !roles.second.empty())
        gt.homes[author] = {{roles.first.begin(), roles.first.end()}, {roles.second.begin(), roles.second.end()}};
      if (roles.first.empty() || roles.second.empty()) continue;
      gt.controversial_authors.push_back(author);
      for (const auto& s : roles.first)
        for (const auto& d : roles.second) ++k[{s, d}];
    }
    const auto edges_from = [&](const std::map<std::pair<std::string, std::string>, std::int64_t>& kk,
                                const auto& common_of) {
      std::vector<TruthEdge> out;
      for (const auto& [pair, kv] : kk) {
        const auto rev = kk.find({pair.second, pair.first});
        const std::int64_t k2 = rev == kk.end() ? 0 : rev->second;
        if (kv + k2 < t.min_pair_authors) continue;
        const std::int64_t n = common_of(pair.first, pair.second);
        out.push_back({pair.first, pair.second, kv, n, static_cast<double>(kv) / static_cast<double>(n)});
      }
      return out;
    };
    gt.edges = edges_from(k, [&](const std::string& a, const std::string& b) { return gt.n_common.at({a, b}); });

    // monthly structure from planted conflicts whose per-month blocks pass the presence threshold
    for (int m = 1; m <= 12; ++m) {
      std::map<std::pair<std::string, std::string>, std::set<std::string>> authors;
      for (const auto& c : s_.conflicts) {
        if (std::find(c.months.begin(), c.months.end(), m) == c.months.end()) continue;
        const auto prefix = default_prefix(c);
        for (int i = 0; i < c.authors; ++i) {
          const auto author = author_name(prefix, i);
          if (!qualified.count(author)) continue;
          const auto& mine = counts_.at(author);
          if (mine.at(c.source)[m - 1] > t.monthly_presence && mine.at(c.target)[m - 1] > t.monthly_presence)
            authors[{c.source, c.target}].insert(author);
        }
      }
      std::map<std::pair<std::string, std::string>, std::int64_t> km;
      for (const auto& [pair, set] : authors) km[pair] = static_cast<std::int64_t>(set.size());
      auto edges = edges_from(km, [&](const std::string& a, const std::string& b) {
        return overlap(present_month[m - 1][a], present_month[m - 1][b]);
      });
      if (!edges.empty()) gt.monthly_edges[m] = std::move(edges);
    }
    std::set<std::string> sources;
    for (const auto& c : s_.conflicts) sources.insert(c.source);
    for (const auto& src : sources) {
      std::vector<std::optional<std::string>> track(12);
      for (const auto& [m, edges] : gt.monthly_edges) {
        const TruthEdge* best = nullptr;
        for (const auto& e : edges)
          if (e.source == src && (!best || e.weight > best->weight || (e.weight == best->weight && e.target < best->target)))
            best = &e;
        if (best) track[m - 1] = best->target;
      }
      gt.monthly_top_targets[src] = std::move(track);
    }
    return gt;
  }

  const Scenario& s_;
  std::mt19937_64 rng_;
  std::map<std::string, Rates> rates_;
  std::vector<CommentRecord> out_;
  std::map<std::string, std::map<std::string, MonthCounts>> counts_;
  std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> designed_;
  std::map<std::string, int> planted_filler_;
};

}  // namespace

GeneratedCorpus generate(const Scenario& scenario) {
  scenario.validate();
  return Generator(scenario).run();
}

std::string GroundTruth::to_json() const {
  const auto edge_j = [](const TruthEdge& e) {
    return json{{"source", e.source}, {"target", e.target}, {"k", e.k}, {"n_common", e.n_common}, {"weight", e.weight}};
  };
  json j;
  j["controversial_authors"] = controversial_authors;
  json homes_j = json::object();
  for (const auto& [a, h] : homes) homes_j[a] = {{"social", h.social}, {"antisocial", h.antisocial}};
  j["homes"] = homes_j;
  json edges_j = json::array();
  for (const auto& e : edges) edges_j.push_back(edge_j(e));
  j["edges"] = edges_j;
  json monthly = json::object();
  for (const auto& [m, es] : monthly_edges) {
    json arr = json::array();
    for (const auto& e : es) arr.push_back(edge_j(e));
    monthly[std::to_string(m)] = arr;
  }
  j["monthly_edges"] = monthly;
  json tops = json::object();
  for (const auto& [src, track] : monthly_top_targets) {
    json arr = json::array();
    for (const auto& t : track) arr.push_back(t ? json(*t) : json(nullptr));
    tops[src] = arr;
  }
  j["monthly_top_targets"] = tops;
  return j.dump(2) + "\n";
}

void write_comments_jsonl(std::ostream& out, std::span<const CommentRecord> comments) {
  for (const auto& c : comments) {
    out << "{\"author\":" << json(c.author).dump() << ",\"subreddit\":" << json(c.subreddit).dump()
        << ",\"score\":" << c.score << ",\"created_utc\":" << c.created_utc;
    if (!c.comment_id.empty()) out << ",\"id\":" << json(c.comment_id).dump();
    out << "}\n";
  }
}

void write_flat_corpus(std::ostream& out, std::uint64_t records, std::uint32_t authors, std::uint32_t subreddits,
                       std::uint64_t seed, int year) {
  using namespace std::chrono;
  const auto start = duration_cast<seconds>(sys_days{std::chrono::year{year} / 1 / 1}.time_since_epoch()).count();
  const auto end = duration_cast<seconds>(sys_days{std::chrono::year{year + 1} / 1 / 1}.time_since_epoch()).count();
  std::mt19937_64 g(seed);
  std::string line;
  std::string buf;
  buf.reserve(1 << 20);
  for (std::uint64_t i = 0; i < records; ++i) {
    line = "{\"author\":\"u";
    line += std::to_string(rng::uniform_below(g, authors));
    line += "\",\"subreddit\":\"s";
    line += std::to_string(rng::uniform_below(g, subreddits));
    line += "\",\"score\":";
    line += std::to_string(static_cast<std::int64_t>(rng::uniform_below(g, 31)) - 10);
    line += ",\"created_utc\":";
    line += std::to_string(start + static_cast<std::int64_t>(rng::uniform_below(g, static_cast<std::uint64_t>(end - start))));
    line += ",\"id\":\"t";
    line += std::to_string(i);
    line += "\"}\n";
    buf += line;
    if (buf.size() > (1u << 20) - 256) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

// ---------------------------------------------------------------------------
// Presets

namespace {

std::string sub_name(int i) {
  std::ostringstream os;
  os << 's' << std::setw(2) << std::setfill('0') << i;
  return os.str();
}

}  // namespace

Scenario demo_scenario() {
  Scenario s;
  s.seed = 2016;
  s.subreddits = {{"AskReddit", 0.6, 0.15}, {"atheism", 0.68, 0.1},   {"Christianity", 0.7, 0.09},
                  {"canada", 0.72, 0.08},   {"nfl", 0.7, 0.1},        {"nba", 0.71, 0.09},
                  {"politics", 0.66, 0.12}, {"The_Donald", 0.7, 0.1}, {"hillaryclinton", 0.69, 0.1},
                  {"SandersForPresident", 0.7, 0.1}, {"science", 0.75, 0.06}, {"conspiracy", 0.65, 0.12},
                  {"worldnews", 0.6, 0.15}};
  BackgroundCohort bg;
  bg.prefix = "regular";
  bg.authors = 220;
  bg.subreddits_per_author = 3;
  bg.min_comments = 40;
  bg.max_comments = 70;
  bg.filler_comments = 40;
  bg.enforce_design = true;
  bg.pool = {"atheism", "Christianity", "canada", "nfl", "nba", "politics", "The_Donald", "hillaryclinton",
             "SandersForPresident", "science", "conspiracy"};
  s.background.push_back(bg);

  const auto conflict = [](std::string src, std::string dst, int authors, std::string prefix = {},
                           std::vector<int> months = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, int comments = 24) {
    PlantedConflict c;
    c.source = std::move(src);
    c.target = std::move(dst);
    c.authors = authors;
    c.comments_source = comments;
    c.comments_target = comments;
    c.prefix = std::move(prefix);
    c.months = std::move(months);
    return c;
  };
  const std::vector<int> first_half{1, 2, 3, 4, 5, 6};
  const std::vector<int> second_half{7, 8, 9, 10, 11, 12};
  s.conflicts = {
      conflict("atheism", "Christianity", 10),
      conflict("Christianity", "atheism", 7),
      conflict("The_Donald", "politics", 14),
      conflict("politics", "The_Donald", 9),
      // one cohort targeting three subreddits at once, and a second one
      conflict("The_Donald", "politics", 7, "td_multi"),
      conflict("The_Donald", "hillaryclinton", 7, "td_multi"),
      conflict("The_Donald", "SandersForPresident", 7, "td_multi"),
      conflict("conspiracy", "science", 9),
      conflict("conspiracy", "science", 6, "cons_multi"),
      conflict("conspiracy", "Christianity", 6, "cons_multi"),
      conflict("conspiracy", "atheism", 6, "cons_multi"),
      // two authors hostile to both clusters
      conflict("nba", "politics", 2, "bridge"),
      conflict("nba", "science", 2, "bridge"),
      // focus shifts halfway through the year
      conflict("SandersForPresident", "hillaryclinton", 8, {}, first_half, 30),
      conflict("SandersForPresident", "The_Donald", 8, {}, second_half, 30),
      conflict("The_Donald", "science", 6, "td_early", first_half, 30),
      conflict("The_Donald", "atheism", 6, "td_late", second_half, 30),
      conflict("nfl", "nba", 6),
      conflict("nba", "nfl", 5),
  };
  return s;
}

Scenario planted_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.subreddits.push_back({"AskReddit", 0.6, 0.15});
  for (int i = 0; i < 20; ++i) s.subreddits.push_back({sub_name(i), 0.65 + 0.005 * i, 0.12 - 0.002 * i});
  BackgroundCohort bg;
  bg.prefix = "bg";
  bg.authors = 400;
  bg.subreddits_per_author = 3;
  bg.min_comments = 12;
  bg.max_comments = 30;
  bg.filler_comments = 100;
  bg.enforce_design = true;
  s.background.push_back(bg);
  const std::array<std::pair<int, int>, 10> pairs{{{0, 1}, {1, 0}, {2, 3}, {4, 5}, {5, 6}, {6, 4}, {7, 8}, {9, 10}, {11, 12}, {13, 14}}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    PlantedConflict c;
    c.source = sub_name(pairs[i].first);
    c.target = sub_name(pairs[i].second);
    c.authors = 12 + static_cast<int>(i % 5);
    c.comments_source = 15 + static_cast<int>(i % 3);
    c.comments_target = 15 + static_cast<int>(i % 4);
    s.conflicts.push_back(c);
  }
  return s;
}

Scenario null_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.subreddits.push_back({"AskReddit", 0.6, 0.15});
  for (int i = 0; i < 10; ++i) s.subreddits.push_back({sub_name(i), 0.38 + 0.008 * i, 0.44 - 0.008 * i});
  BackgroundCohort bg;
  bg.prefix = "u";
  bg.authors = 300;
  bg.subreddits_per_author = 4;
  bg.min_comments = 12;
  bg.max_comments = 25;
  bg.filler_comments = 60;
  s.background.push_back(bg);
  return s;
}

Scenario mixed_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.subreddits.push_back({"AskReddit", 0.6, 0.15});
  for (int i = 0; i < 12; ++i) s.subreddits.push_back({sub_name(i), 0.62 + 0.01 * i, 0.16 - 0.005 * i});
  BackgroundCohort bg;
  bg.prefix = "mix";
  bg.authors = 300;
  bg.subreddits_per_author = 3;
  bg.min_comments = 6;
  bg.max_comments = 30;
  bg.filler_comments = 80;
  s.background.push_back(bg);
  const std::array<std::tuple<int, int, int>, 6> planted{
      {{0, 1, 12}, {1, 0, 25}, {2, 3, 15}, {4, 5, 30}, {6, 7, 12}, {8, 9, 22}}};
  for (const auto& [a, b, n] : planted) {
    PlantedConflict c;
    c.source = sub_name(a);
    c.target = sub_name(b);
    c.authors = 10;
    c.comments_source = n;
    c.comments_target = n;
    s.conflicts.push_back(c);
  }
  return s;
}

Scenario preset(std::string_view name, std::uint64_t seed) {
  if (name == "demo") {
    Scenario s = demo_scenario();
    s.seed = seed;
    return s;
  }
  if (name == "planted") return planted_scenario(seed);
  if (name == "null") return null_scenario(seed);
  if (name == "mixed") return mixed_scenario(seed);
  throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

}  // namespace subconflict::synth
