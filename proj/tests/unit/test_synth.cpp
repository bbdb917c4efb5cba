#include <doctest.h>

#include <sstream>

#include "subconflict/activity.hpp"
#include "subconflict/conflict.hpp"
#include "subconflict/significance.hpp"
#include "subconflict/synth.hpp"
#include "support.hpp"

using namespace subconflict;

namespace {

synth::Scenario one_conflict() {
  synth::Scenario s;
  s.subreddits = {{"AskReddit", 0.6, 0.2}, {"A", 0.7, 0.1}, {"B", 0.7, 0.1}};
  synth::PlantedConflict c;
  c.source = "A";
  c.target = "B";
  c.authors = 12;
  s.conflicts.push_back(c);
  return s;
}

std::string stream_of(const synth::GeneratedCorpus& g) {
  std::stringstream ss;
  synth::write_comments_jsonl(ss, g.comments);
  return ss.str();
}

}  // namespace

TEST_SUITE("synth") {
  TEST_CASE("one planted conflict gives one truth edge with k = 12") {
    const auto g = synth::generate(one_conflict());
    REQUIRE(g.truth.edges.size() == 1);
    CHECK(g.truth.edges[0].source == "A");
    CHECK(g.truth.edges[0].target == "B");
    CHECK(g.truth.edges[0].k == 12);
    CHECK(g.truth.edges[0].n_common == 12);
    CHECK(g.truth.edges[0].weight == 1.0);
    CHECK(g.truth.controversial_authors.size() == 12);
  }

  TEST_CASE("null scenario plants nothing") {
    const auto g = synth::generate(synth::null_scenario(3));
    CHECK(g.truth.edges.empty());
    CHECK(g.truth.controversial_authors.empty());
  }

  TEST_CASE("replay is byte-identical; the seed matters") {
    const auto s = synth::planted_scenario(9);
    CHECK(stream_of(synth::generate(s)) == stream_of(synth::generate(s)));
    CHECK(synth::generate(s).truth.to_json() == synth::generate(s).truth.to_json());
    CHECK(stream_of(synth::generate(synth::planted_scenario(10))) != stream_of(synth::generate(s)));
  }

  TEST_CASE("scenario json round-trips") {
    for (const char* name : {"demo", "planted", "null", "mixed"}) {
      const auto s = synth::preset(name, 42);
      CHECK(synth::parse_scenario(synth::scenario_to_json(s)) == s);
    }
    CHECK_THROWS_AS(synth::preset("nope", 1), ConfigError);
    CHECK_THROWS_AS(synth::parse_scenario("{\"subreddits\": 3}"), ConfigError);
  }

  TEST_CASE("infeasible scenarios are rejected before generation") {
    auto s = one_conflict();
    s.conflicts[0].comments_source = 5;
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    s.conflicts[0].target = "Z";
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    s.conflicts[0].target = "A";
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    s.conflicts[0].target_rate = 0.3;
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    s.filler_subreddit = "pics";
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    s.conflicts[0].months = {0};
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
    s = one_conflict();
    auto back = s.conflicts[0];
    std::swap(back.source, back.target);
    back.prefix = s.conflicts[0].source + "_vs_" + s.conflicts[0].target;  // same authors, opposite roles
    s.conflicts.push_back(back);
    CHECK_THROWS_AS(synth::generate(s), ConfigError);
  }

  TEST_CASE("planted authors realise their designed homes") {
    const auto s = synth::planted_scenario(4);
    const auto g = synth::generate(s);
    const StatsIndex idx(aggregate(g.comments, AnalysisWindow{}));
    const auto act = idx.yearly();
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    std::size_t checked = 0;
    for (const auto& [author, homes] : g.truth.homes) {
      const auto id = idx.vocab().find_author(author);
      REQUIRE(id);
      const auto h = classify_homes(*id, act, 10, ex);
      std::vector<std::string> social, anti;
      for (auto x : h.social) social.push_back(idx.vocab().subreddit(x));
      for (auto x : h.antisocial) anti.push_back(idx.vocab().subreddit(x));
      CHECK(social == homes.social);
      CHECK(anti == homes.antisocial);
      CHECK(act.total(*id) > 100);
      ++checked;
    }
    CHECK(checked > 100);
  }

  TEST_CASE("truth common-author counts equal a recount of the stream") {
    const auto g = synth::generate(synth::mixed_scenario(2));
    const StatsIndex idx(aggregate(g.comments, AnalysisWindow{}));
    const auto act = idx.yearly();
    const PresenceIndex common(act, qualified_authors(act, 100), 10);
    for (const auto& [pair, n] : g.truth.n_common) {
      const auto a = idx.vocab().find_subreddit(pair.first);
      const auto b = idx.vocab().find_subreddit(pair.second);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(common.common_count(*a, *b) == n);
    }
  }

  TEST_CASE("profiles recover the realised polarity counts exactly") {
    const auto g = synth::generate(synth::null_scenario(6));
    const StatsIndex idx(aggregate(g.comments, AnalysisWindow{}));
    const auto act = idx.yearly();
    std::map<std::pair<std::string, std::string>, PolarityCounts> per;
    for (const auto& c : g.comments) {
      auto& x = per[{c.author, c.subreddit}];
      if (c.score > 0) ++x.pos;
      else if (c.score < 0) ++x.neg;
      else ++x.neu;
    }
    for (SubId s = 0; s < idx.vocab().subreddit_count(); ++s) {
      PolarityCounts expect;
      for (const auto& [key, c] : per)
        if (key.second == idx.vocab().subreddit(s) && c.total() > 10) expect += c;
      if (expect.empty()) continue;
      CHECK(estimate_profile(s, act, 10).counts == expect);
    }
  }

  TEST_CASE("flat corpus writer emits the requested record count") {
    std::stringstream ss;
    synth::write_flat_corpus(ss, 1000, 50, 10, 1);
    const auto text = ss.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1000);
    IngestOptions o;
    const auto r = ingest_buffer(text, o);
    CHECK(r.report.records == 1000);
  }
}
