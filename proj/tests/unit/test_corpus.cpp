#include <doctest.h>
#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "subconflict/activity.hpp"
#include "subconflict/corpus.hpp"
#include "support.hpp"

using namespace subconflict;
using testing::record_json;
using testing::ts;

namespace {

const ParseOptions kOpts{};

CommentRecord must_parse(const std::string& line) {
  auto r = parse_record(line, kOpts);
  REQUIRE(std::holds_alternative<CommentRecord>(r));
  return std::get<CommentRecord>(r);
}

SkipReason must_skip(const std::string& line) {
  auto r = parse_record(line, kOpts);
  REQUIRE(std::holds_alternative<Skip>(r));
  return std::get<Skip>(r).reason;
}

// Independent count: tuple map keyed by (author, sub, month).
std::map<std::tuple<std::string, std::string, int>, PolarityCounts> brute_counts(
    const std::vector<CommentRecord>& recs, const AnalysisWindow& w) {
  std::map<std::tuple<std::string, std::string, int>, PolarityCounts> m;
  for (const auto& r : recs) {
    const int month = w.month_of(r.created_utc);
    if (!month) continue;
    auto& c = m[{r.author, r.subreddit, month}];
    if (r.score > 0) ++c.pos;
    else if (r.score < 0) ++c.neg;
    else ++c.neu;
  }
  return m;
}

std::vector<CommentRecord> random_records(std::mt19937_64& g, std::size_t n) {
  std::vector<CommentRecord> out;
  std::uniform_int_distribution<int> author(0, 60), sub(0, 15), score(-5, 8), month(1, 12), day(1, 28);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"a" + std::to_string(author(g)), "s" + std::to_string(sub(g)), score(g),
                   ts(2016, month(g), day(g)), ""});
  return out;
}

std::string to_lines(const std::vector<CommentRecord>& recs) {
  std::string s;
  for (const auto& r : recs) s += record_json(r.author, r.subreddit, r.score, r.created_utc) + "\n";
  return s;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("polarity follows the sign of the score") {
    CHECK(classify_polarity(5) == Polarity::Positive);
    CHECK(classify_polarity(-2) == Polarity::Negative);
    CHECK(classify_polarity(0) == Polarity::Neutral);
    for (std::int64_t s = -1000; s <= 1000; ++s) {
      const int fired = (classify_polarity(s) == Polarity::Positive) + (classify_polarity(s) == Polarity::Negative) +
                        (classify_polarity(s) == Polarity::Neutral);
      CHECK(fired == 1);
    }
  }

  TEST_CASE("window months are UTC") {
    AnalysisWindow w;
    CHECK(w.month_of(ts(2016, 1, 1) - 12 * 3600) == 1);      // 2016-01-01T00:00:00Z
    CHECK(w.month_of(ts(2016, 1, 1) - 12 * 3600 - 1) == 0);  // one second earlier
    CHECK(w.month_of(ts(2016, 12, 31) + 11 * 3600 + 3599) == 12);
    CHECK(w.month_of(ts(2017, 1, 1) - 12 * 3600) == 0);
    CHECK(w.month_of(ts(2016, 2, 29)) == 2);
    AnalysisWindow spring{2016, 3, 5};
    CHECK(spring.month_of(ts(2016, 2, 10)) == 0);
    CHECK(spring.month_of(ts(2016, 4, 10)) == 4);
    CHECK_THROWS_AS((AnalysisWindow{2016, 5, 3}.validate()), ConfigError);
  }

  TEST_CASE("well-formed record parses") {
    const auto r = must_parse(R"({"author":"u1","subreddit":"s1","score":5,"created_utc":1458000000,"id":"x"})");
    CHECK(r.author == "u1");
    CHECK(r.subreddit == "s1");
    CHECK(r.score == 5);
    CHECK(r.created_utc == 1458000000);
    CHECK(r.comment_id == "x");
  }

  TEST_CASE("field order, whitespace and unknown members do not matter") {
    const auto r = must_parse(
        R"( { "created_utc" : "1458000000", "extra": {"a":[1,2,{"b":null}]}, "score": -3, "subreddit":"sé", "author":"u\"q" } )");
    CHECK(r.author == "u\"q");
    CHECK(r.subreddit == "s\xc3\xa9");
    CHECK(r.score == -3);
    CHECK(r.created_utc == 1458000000);
  }

  TEST_CASE("surrogate pairs decode to one code point") {
    const auto r = must_parse(R"({"author":"😀","subreddit":"s","score":1,"created_utc":1458000000})");
    CHECK(r.author == "\xf0\x9f\x98\x80");
  }

  TEST_CASE("skip reasons") {
    CHECK(must_skip(record_json("[deleted]", "s1", 1, ts(2016, 3))) == SkipReason::DeletedAuthor);
    CHECK(must_skip(record_json("u1", "s1", 1, ts(2015, 12))) == SkipReason::OutOfWindow);
    CHECK(must_skip(record_json("u1", "s1", 1, ts(2017, 1))) == SkipReason::OutOfWindow);
    CHECK(must_skip(R"({"author":"u1","subreddit":"s1","created_utc":1458000000})") == SkipReason::MalformedField);
    CHECK(must_skip(R"({"author":"u1","subreddit":"s1","score":1.5,"created_utc":1458000000})") ==
          SkipReason::MalformedField);
    CHECK(must_skip(R"({"author":"","subreddit":"s1","score":1,"created_utc":1458000000})") ==
          SkipReason::MalformedField);
    CHECK(must_skip(R"({"author":7,"subreddit":"s1","score":1,"created_utc":1458000000})") ==
          SkipReason::MalformedField);
    CHECK(must_skip("") == SkipReason::EmptyLine);
    CHECK(must_skip("   \r") == SkipReason::EmptyLine);
  }

  TEST_CASE("syntax errors throw with a position") {
    for (const char* bad : {R"({"author":"u1")", "not json", R"({"author":"u1",})", R"([1,2])",
                            R"({"author":"u1","subreddit":"s1","score":1,"created_utc":1} trailing)"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_record(bad, kOpts), CorruptInputError);
    }
  }

  TEST_CASE("aggregate counts one month") {
    const std::vector<CommentRecord> recs{{"u1", "s1", 3, ts(2016, 3), ""},
                                          {"u1", "s1", -1, ts(2016, 3, 2), ""},
                                          {"u1", "s1", 0, ts(2016, 3, 30), ""}};
    const auto t = aggregate(recs, AnalysisWindow{});
    REQUIRE(t.size() == 1);
    CHECK(t[0] == AuthorSubredditStat{"u1", "s1", 3, {1, 1, 1}});
    CHECK(aggregate({}, AnalysisWindow{}).empty());
  }

  TEST_CASE("reference aggregate matches a brute-force count") {
    std::mt19937_64 g(7);
    const auto recs = random_records(g, 5000);
    const auto t = aggregate(recs, AnalysisWindow{});
    const auto m = brute_counts(recs, AnalysisWindow{});
    REQUIRE(t.size() == m.size());
    std::size_t i = 0;
    for (const auto& [key, c] : m) {
      CHECK(std::tie(t[i].author, t[i].subreddit, t[i].month) == key);
      CHECK(t[i].counts == c);
      ++i;
    }
  }

  TEST_CASE("ingestion is order, thread and spill invariant") {
    std::mt19937_64 g(11);
    auto recs = random_records(g, 10000);
    const auto reference = aggregate(recs, AnalysisWindow{});
    auto sorted = recs;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::tie(a.author, a.subreddit, a.created_utc) < std::tie(b.author, b.subreddit, b.created_utc);
    });
    const auto spill = std::filesystem::temp_directory_path() / "subconflict_spill_test";
    std::filesystem::create_directories(spill);
    for (unsigned threads : {1u, 2u, 4u}) {
      for (std::size_t block : {std::size_t{1} << 12, std::size_t{1} << 20}) {
        for (std::size_t budget : {std::size_t{0}, std::size_t{50}}) {
          IngestOptions o;
          o.threads = threads;
          o.block_bytes = block;
          o.max_keys_in_memory = budget;
          o.spill_dir = spill;
          CAPTURE(threads);
          CAPTURE(block);
          CAPTURE(budget);
          const auto a = ingest_buffer(to_lines(recs), o);
          const auto b = ingest_buffer(to_lines(sorted), o);
          CHECK(a.stats == reference);
          CHECK(b.stats == reference);
          if (budget) CHECK(a.report.spilled_runs > 0);
        }
      }
    }
    std::filesystem::remove_all(spill);
  }

  TEST_CASE("conservation: counted comments plus skips equal lines") {
    std::mt19937_64 g(3);
    auto recs = random_records(g, 2000);
    std::string text = to_lines(recs);
    text += record_json("[deleted]", "s1", 1, ts(2016, 4)) + "\n";
    text += record_json("u", "s1", 1, ts(2014, 4)) + "\n";
    text += "\n";
    text += R"({"author":"u","subreddit":"s"})" "\n";
    text += record_json("tail", "s1", 1, ts(2016, 4));  // no final newline
    IngestOptions o;
    o.threads = 2;
    o.block_bytes = 1000;
    const auto res = ingest_buffer(text, o);
    std::int64_t counted = 0;
    for (const auto& s : res.stats) counted += s.counts.total();
    CHECK(res.report.lines == 2005);
    CHECK(static_cast<std::uint64_t>(counted) + res.report.skipped() == res.report.lines);
    CHECK(res.report.records == 2001);
    CHECK(res.report.skips.at(SkipReason::DeletedAuthor) == 1);
    CHECK(res.report.skips.at(SkipReason::OutOfWindow) == 1);
    CHECK(res.report.skips.at(SkipReason::EmptyLine) == 1);
    CHECK(res.report.skips.at(SkipReason::MalformedField) == 1);
  }

  TEST_CASE("corrupt line aborts with line number and byte offset") {
    const std::string good = record_json("u", "s", 1, ts(2016, 5)) + "\n";
    std::string text;
    for (int i = 0; i < 40; ++i) text += good;
    const std::size_t offset = text.size();
    text += "{\"author\": oops}\n";
    text += good;
    for (unsigned threads : {1u, 3u}) {
      IngestOptions o;
      o.threads = threads;
      o.block_bytes = 256;
      try {
        ingest_buffer(text, o);
        FAIL("expected CorruptInputError");
      } catch (const CorruptInputError& e) {
        CHECK(e.line_number() == 41);
        CHECK(e.byte_offset() >= offset);
        CHECK(e.byte_offset() < offset + 17);
      }
    }
  }

  TEST_CASE("gzip input matches plain input") {
    std::mt19937_64 g(5);
    const auto recs = random_records(g, 3000);
    const std::string text = to_lines(recs);
    const auto dir = std::filesystem::temp_directory_path();
    const auto gz = dir / "subconflict_test_input.jsonl.gz";
    gzFile f = gzopen(gz.string().c_str(), "wb");
    REQUIRE(f != nullptr);
    gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
    const auto res = ingest_file(gz, IngestOptions{});
    CHECK(res.stats == aggregate(recs, AnalysisWindow{}));
    std::filesystem::remove(gz);
    CHECK_THROWS_AS(ingest_file(dir / "does_not_exist.jsonl", IngestOptions{}), InputError);
  }

  TEST_CASE("aggregate csv round-trips and rejects unsorted rows") {
    std::mt19937_64 g(9);
    const auto t = aggregate(random_records(g, 1000), AnalysisWindow{});
    std::stringstream ss;
    write_aggregate_csv(ss, t);
    CHECK(ss.str().rfind("author,subreddit,month,n_pos,n_neg,n_neu\n", 0) == 0);
    CHECK(read_aggregate_csv(ss, "mem") == t);
    std::stringstream bad("author,subreddit,month,n_pos,n_neg,n_neu\nb,s,1,1,0,0\na,s,1,1,0,0\n");
    CHECK_THROWS_AS(read_aggregate_csv(bad, "mem"), InputError);
  }

  TEST_CASE("monthly activity sums to the yearly activity") {
    std::mt19937_64 g(13);
    const StatsIndex idx(aggregate(random_records(g, 3000), AnalysisWindow{}));
    const auto year = idx.yearly();
    std::vector<Activity> months;
    for (int m = 1; m <= 12; ++m) months.push_back(idx.monthly(m));
    for (AuthorId a = 0; a < year.author_count(); ++a) {
      for (const auto& p : year.of(a)) {
        PolarityCounts sum;
        for (const auto& month : months)
          if (const auto* c = month.find(a, p.sub)) sum += *c;
        CHECK(sum == p.counts);
      }
    }
  }
}
