#include <doctest.h>

#include <sstream>

#include "subconflict/profiles.hpp"
#include "support.hpp"

using namespace subconflict;
using testing::Row;
using testing::table_of;

namespace {

std::vector<std::string> names(const Vocabulary& v, const std::vector<SubId>& ids) {
  std::vector<std::string> out;
  for (auto id : ids) out.push_back(v.subreddit(id));
  return out;
}

}  // namespace

TEST_SUITE("profiles") {
  TEST_CASE("qualification needs strictly more than the total") {
    const StatsIndex idx(table_of({{"at100", "s", 100, 0, 0}, {"at101", "s", 50, 50, 1}, {"at99", "s", 0, 0, 99}}));
    const auto q = qualified_authors(idx.yearly(), 100);
    REQUIRE(q.size() == 1);
    CHECK(idx.vocab().author(q[0]) == "at101");
  }

  TEST_CASE("home rules: presence, majority, ties and exclusions") {
    const StatsIndex idx(table_of({
        {"u", "ten", 10, 0, 0},       // presence must exceed ten
        {"u", "eleven", 11, 0, 0},    // social
        {"u", "hostile", 2, 8, 5},    // anti-social
        {"u", "tied", 5, 5, 5},       // neither
        {"u", "neutral", 0, 0, 20},   // neither
        {"u", "AskReddit", 0, 30, 0}, // excluded
        {"u", "news", 30, 0, 0},      // excluded
    }));
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    const auto h = classify_homes(*idx.vocab().find_author("u"), idx.yearly(), 10, ex);
    CHECK(names(idx.vocab(), h.social) == std::vector<std::string>{"eleven"});
    CHECK(names(idx.vocab(), h.antisocial) == std::vector<std::string>{"hostile"});
    CHECK(h.controversial());
    const ExcludedSet none(idx.vocab(), std::vector<std::string>{});
    const auto h2 = classify_homes(*idx.vocab().find_author("u"), idx.yearly(), 10, none);
    CHECK(names(idx.vocab(), h2.social) == std::vector<std::string>{"eleven", "news"});
    CHECK(names(idx.vocab(), h2.antisocial) == std::vector<std::string>{"AskReddit", "hostile"});
  }

  TEST_CASE("the five defaults are excluded out of the box") {
    CHECK(kDefaultExcludedSubreddits == std::vector<std::string>{"AskReddit", "news", "worldnews", "pics", "videos"});
  }

  TEST_CASE("controversial means both kinds of home") {
    const StatsIndex idx(table_of({{"both", "a", 20, 0, 0}, {"both", "b", 0, 20, 0}, {"only", "a", 20, 0, 0}}));
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    const std::vector<AuthorId> all{0, 1};
    const auto homes = classify_all(all, idx.yearly(), 10, ex);
    const auto con = controversial_authors(homes);
    REQUIRE(con.size() == 1);
    CHECK(idx.vocab().author(con[0].author) == "both");
  }

  TEST_CASE("matches a direct rule scan on random activity") {
    std::mt19937_64 g(21);
    const auto rows = testing::random_rows(g, 80, 8);
    const StatsIndex idx(table_of(rows));
    const auto act = idx.yearly();
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    std::map<std::string, std::map<std::string, PolarityCounts>> by;
    for (const auto& r : rows) by[r.author][r.sub] += PolarityCounts{r.pos, r.neg, r.neu};
    for (const auto& [author, subs] : by) {
      std::vector<std::string> social, anti;
      for (const auto& [sub, c] : subs) {
        if (sub == "AskReddit" || c.total() <= 10) continue;
        if (c.pos > c.neg) social.push_back(sub);
        if (c.neg > c.pos) anti.push_back(sub);
      }
      const auto h = classify_homes(*idx.vocab().find_author(author), act, 10, ex);
      CHECK(names(idx.vocab(), h.social) == social);
      CHECK(names(idx.vocab(), h.antisocial) == anti);
    }
  }

  TEST_CASE("homes csv round-trips") {
    std::mt19937_64 g(4);
    const StatsIndex idx(table_of(testing::random_rows(g, 50, 6)));
    const auto act = idx.yearly();
    const ExcludedSet ex(idx.vocab(), kDefaultExcludedSubreddits);
    auto homes = classify_all(qualified_authors(act, 100), act, 10, ex);
    std::erase_if(homes, [](const auto& h) { return h.social.empty() && h.antisocial.empty(); });
    std::stringstream ss;
    write_homes_csv(ss, homes, idx.vocab());
    CHECK(ss.str().rfind("author,subreddit,home_type\n", 0) == 0);
    CHECK(read_homes_csv(ss, "mem", idx.vocab()) == homes);
    std::stringstream unknown("author,subreddit,home_type\nnobody,s1,social\n");
    CHECK_THROWS_AS(read_homes_csv(unknown, "mem", idx.vocab()), InputError);
  }
}
