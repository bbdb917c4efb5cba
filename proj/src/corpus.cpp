#include "subconflict/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "subconflict/format.hpp"
#include "subconflict/parallel.hpp"
#include "subconflict/rng.hpp"

namespace subconflict {

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::DeletedAuthor: return "deleted_author";
    case SkipReason::MalformedField: return "malformed_field";
    case SkipReason::OutOfWindow: return "out_of_window";
    case SkipReason::EmptyLine: return "empty_line";
  }
  return "?";
}

std::uint64_t IngestReport::skipped() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : skips) n += c;
  return n;
}

int AnalysisWindow::month_of(std::int64_t created_utc) const {
  using namespace std::chrono;
  const auto days = sys_days{} + std::chrono::days{created_utc >= 0 ? created_utc / 86400 : (created_utc - 86399) / 86400};
  const year_month_day ymd{floor<std::chrono::days>(days)};
  if (static_cast<int>(ymd.year()) != year) return 0;
  const int m = static_cast<int>(static_cast<unsigned>(ymd.month()));
  return (m >= first_month && m <= last_month) ? m : 0;
}

void AnalysisWindow::validate() const {
  if (first_month < 1 || last_month > 12 || first_month > last_month)
    throw ConfigError("analysis window months must satisfy 1 <= first_month <= last_month <= 12");
}

namespace {

// ---------------------------------------------------------------------------
// Line scanner for flat JSON objects. Unknown members are skipped, whatever
// their type. Strings without escapes are returned as views into the line.

struct SyntaxFault {
  std::size_t offset;
  const char* message;
};

struct RawRecord {
  std::string_view author, subreddit, id;
  bool has_author = false, has_subreddit = false, has_id = false;
  bool author_ok = true, subreddit_ok = true, id_ok = true;
  bool has_score = false, has_created = false;
  bool score_ok = true, created_ok = true;
  std::int64_t score = 0, created = 0;
};

enum class Field { Author, Subreddit, Score, Created, Id, Other };

Field field_of(std::string_view key) {
  if (key == "author") return Field::Author;
  if (key == "subreddit") return Field::Subreddit;
  if (key == "score") return Field::Score;
  if (key == "created_utc") return Field::Created;
  if (key == "id") return Field::Id;
  return Field::Other;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool at_end_ws() {
    skip_ws();
    return pos_ >= s_.size();
  }

  // Returns true when the line holds only whitespace.
  bool scan(RawRecord& rec, std::array<std::string, 3>& scratch) {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    expect('{', "expected '{'");
    skip_ws();
    if (peek() == '}') {
      ++pos_;
    } else {
      for (;;) {
        skip_ws();
        std::string key_scratch;
        std::string_view key = string(key_scratch);
        skip_ws();
        expect(':', "expected ':'");
        skip_ws();
        switch (field_of(key)) {
          case Field::Author: member_string(rec.author, rec.has_author, rec.author_ok, scratch[0]); break;
          case Field::Subreddit: member_string(rec.subreddit, rec.has_subreddit, rec.subreddit_ok, scratch[1]); break;
          case Field::Id: member_string(rec.id, rec.has_id, rec.id_ok, scratch[2]); break;
          case Field::Score: member_int(rec.score, rec.has_score, rec.score_ok); break;
          case Field::Created: member_int(rec.created, rec.has_created, rec.created_ok); break;
          case Field::Other: skip_value(0); break;
        }
        skip_ws();
        const char c = next_char("unterminated object");
        if (c == '}') break;
        if (c != ',') fault(pos_ - 1, "expected ',' or '}'");
      }
    }
    skip_ws();
    if (pos_ < s_.size()) fault(pos_, "trailing characters after object");
    return true;
  }

 private:
  [[noreturn]] static void fault(std::size_t at, const char* msg) { throw SyntaxFault{at, msg}; }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char next_char(const char* msg) {
    if (pos_ >= s_.size()) fault(pos_, msg);
    return s_[pos_++];
  }
  void expect(char c, const char* msg) {
    if (pos_ >= s_.size() || s_[pos_] != c) fault(pos_, msg);
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r' || s_[pos_] == '\n')) ++pos_;
  }

  std::uint32_t hex4() {
    if (pos_ + 4 > s_.size()) fault(pos_, "truncated \\u escape");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const char c = s_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= c - '0';
      else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
      else fault(pos_ - 1, "bad hex digit in \\u escape");
    }
    return v;
  }

  std::string_view string(std::string& scratch) {
    expect('"', "expected string");
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '"') {
        std::string_view v = s_.substr(start, pos_ - start);
        ++pos_;
        return v;
      }
      if (c == '\\') break;
      if (static_cast<unsigned char>(c) < 0x20) fault(pos_, "control character in string");
      ++pos_;
    }
    if (pos_ >= s_.size()) fault(pos_, "unterminated string");
    // slow path with escapes
    scratch.assign(s_.substr(start, pos_ - start));
    for (;;) {
      const char c = next_char("unterminated string");
      if (c == '"') return scratch;
      if (static_cast<unsigned char>(c) < 0x20) fault(pos_ - 1, "control character in string");
      if (c != '\\') {
        scratch += c;
        continue;
      }
      const char e = next_char("unterminated escape");
      switch (e) {
        case '"': scratch += '"'; break;
        case '\\': scratch += '\\'; break;
        case '/': scratch += '/'; break;
        case 'b': scratch += '\b'; break;
        case 'f': scratch += '\f'; break;
        case 'n': scratch += '\n'; break;
        case 'r': scratch += '\r'; break;
        case 't': scratch += '\t'; break;
        case 'u': {
          std::uint32_t cp = hex4();
          if (cp >= 0xD800 && cp <= 0xDBFF && pos_ + 6 <= s_.size() && s_[pos_] == '\\' && s_[pos_ + 1] == 'u') {
            pos_ += 2;
            const std::uint32_t lo = hex4();
            if (lo >= 0xDC00 && lo <= 0xDFFF) {
              cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
            } else {
              append_utf8(scratch, 0xFFFD);
              cp = lo;
            }
          }
          append_utf8(scratch, cp);
          break;
        }
        default: fault(pos_ - 1, "invalid escape");
      }
    }
  }

  // Number token; returns the view. Validates JSON number grammar.
  std::string_view number() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (peek() == '0') {
      ++pos_;
    } else if (peek() >= '1' && peek() <= '9') {
      while (peek() >= '0' && peek() <= '9') ++pos_;
    } else {
      fault(pos_, "invalid number");
    }
    if (peek() == '.') {
      ++pos_;
      if (!(peek() >= '0' && peek() <= '9')) fault(pos_, "invalid number");
      while (peek() >= '0' && peek() <= '9') ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!(peek() >= '0' && peek() <= '9')) fault(pos_, "invalid number");
      while (peek() >= '0' && peek() <= '9') ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  void literal(std::string_view word) {
    if (s_.substr(pos_, word.size()) != word) fault(pos_, "invalid literal");
    pos_ += word.size();
  }

  void skip_value(int depth) {
    if (depth > 64) fault(pos_, "nesting too deep");
    skip_ws();
    const char c = peek();
    if (c == '"') {
      std::string tmp;
      string(tmp);
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++pos_;
      skip_ws();
      if (peek() == close) {
        ++pos_;
        return;
      }
      for (;;) {
        skip_ws();
        if (c == '{') {
          std::string tmp;
          string(tmp);
          skip_ws();
          expect(':', "expected ':'");
        }
        skip_value(depth + 1);
        skip_ws();
        const char d = next_char("unterminated container");
        if (d == close) return;
        if (d != ',') fault(pos_ - 1, "expected ',' in container");
      }
    } else if (c == 't') {
      literal("true");
    } else if (c == 'f') {
      literal("false");
    } else if (c == 'n') {
      literal("null");
    } else if (c == '-' || (c >= '0' && c <= '9')) {
      number();
    } else {
      fault(pos_, "unexpected character");
    }
  }

  void member_string(std::string_view& out, bool& has, bool& ok, std::string& scratch) {
    has = true;
    if (peek() == '"') {
      out = string(scratch);
      // a later duplicate may overwrite scratch-backed views; copy is not needed
      // because each field owns its own scratch buffer
      ok = true;
    } else {
      skip_value(0);
      ok = false;
    }
  }

  static bool to_int(std::string_view t, std::int64_t& v) {
    if (t.empty()) return false;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    return ec == std::errc() && end == t.data() + t.size();
  }

  // Integer member; digit strings are accepted as some archives quote them.
  void member_int(std::int64_t& out, bool& has, bool& ok) {
    has = true;
    const char c = peek();
    if (c == '-' || (c >= '0' && c <= '9')) {
      ok = to_int(number(), out);
    } else if (c == '"') {
      std::string tmp;
      ok = to_int(string(tmp), out);
    } else {
      skip_value(0);
      ok = false;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct RecordView {
  std::string_view author, subreddit, id;
  std::int64_t score = 0, created = 0;
  int month = 0;
};

struct LineScratch {
  std::array<std::string, 3> strings;
};

// Fast path shared by parse_record and the ingest workers.
// Returns true with `view` filled, or false with `reason` set.
// Throws SyntaxFault; returns EmptyLine via reason for blank lines.
bool scan_line(std::string_view line, const ParseOptions& opt, LineScratch& scratch, RecordView& view,
               SkipReason& reason) {
  RawRecord raw;
  Scanner sc(line);
  if (!sc.scan(raw, scratch.strings)) {
    reason = SkipReason::EmptyLine;
    return false;
  }
  const auto bad_id = [](std::string_view s) { return s.empty() || s.find('\0') != std::string_view::npos; };
  if (!raw.has_author || !raw.author_ok || !raw.has_subreddit || !raw.subreddit_ok || !raw.has_score ||
      !raw.score_ok || !raw.has_created || !raw.created_ok || (raw.has_id && !raw.id_ok) || bad_id(raw.author) ||
      bad_id(raw.subreddit)) {
    reason = SkipReason::MalformedField;
    return false;
  }
  for (const auto& d : opt.deleted_authors) {
    if (raw.author == d) {
      reason = SkipReason::DeletedAuthor;
      return false;
    }
  }
  const int month = opt.window.month_of(raw.created);
  if (month == 0) {
    reason = SkipReason::OutOfWindow;
    return false;
  }
  view = RecordView{raw.author, raw.subreddit, raw.id, raw.score, raw.created, month};
  return true;
}

// ---------------------------------------------------------------------------
// Aggregation engine.

using MonthCounts = std::array<PolarityCounts, 12>;

struct KeyHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using ShardMap = std::unordered_map<std::string, MonthCounts, KeyHash, std::equal_to<>>;
using Entry = std::pair<std::string, MonthCounts>;

// "author\0subreddit": byte order of the encoded key equals (author, subreddit) order.
void encode_key(std::string& buf, std::string_view author, std::string_view sub) {
  buf.assign(author);
  buf += '\0';
  buf += sub;
}

void add(PolarityCounts& c, std::int64_t score) {
  switch (classify_polarity(score)) {
    case Polarity::Positive: ++c.pos; break;
    case Polarity::Negative: ++c.neg; break;
    case Polarity::Neutral: ++c.neu; break;
  }
}

struct Worker {
  std::vector<ShardMap> shards;
  std::uint64_t lines = 0;
  std::uint64_t records = 0;
  std::array<std::uint64_t, kAllSkipReasons.size()> skips{};
  // first syntax fault in the current chunk
  bool faulted = false;
  std::size_t fault_offset = 0;
  std::uint64_t fault_line = 0;
  std::string fault_message;
  std::uint64_t chunk_lines = 0;
  std::string key;
  LineScratch scratch;

  void process(std::string_view chunk, const ParseOptions& opt, bool final_piece) {
    chunk_lines = 0;
    std::size_t pos = 0;
    while (pos < chunk.size()) {
      std::size_t nl = chunk.find('\n', pos);
      if (nl == std::string_view::npos) {
        SUBCONFLICT_ASSERT(final_piece, "chunk must end at a line boundary");
        nl = chunk.size();
      }
      const std::string_view line = chunk.substr(pos, nl - pos);
      ++chunk_lines;
      RecordView view;
      SkipReason reason{};
      bool ok = false;
      try {
        ok = scan_line(line, opt, scratch, view, reason);
      } catch (const SyntaxFault& f) {
        faulted = true;
        fault_offset = pos + f.offset;
        fault_line = chunk_lines;
        fault_message = f.message;
        return;
      }
      if (ok) {
        encode_key(key, view.author, view.subreddit);
        const std::size_t h = KeyHash{}(key);
        ShardMap& shard = shards[h % shards.size()];
        auto it = shard.find(std::string_view(key));
        if (it == shard.end()) it = shard.emplace(key, MonthCounts{}).first;
        add(it->second[view.month - 1], view.score);
        ++records;
      } else {
        ++skips[static_cast<std::size_t>(reason)];
      }
      pos = nl + 1;
    }
    lines += chunk_lines;
  }
};

std::size_t key_count(const std::vector<Worker>& workers) {
  std::size_t n = 0;
  for (const auto& w : workers)
    for (const auto& s : w.shards) n += s.size();
  return n;
}

// Merges shard s of every worker, then sorts the union of all shards.
std::vector<Entry> drain_sorted(std::vector<Worker>& workers, unsigned threads) {
  const std::size_t nshards = workers.front().shards.size();
  std::vector<std::vector<Entry>> per_shard(nshards);
  parallel_for(nshards, threads, [&](std::size_t s) {
    ShardMap& into = workers.front().shards[s];
    for (std::size_t w = 1; w < workers.size(); ++w) {
      for (auto& [k, v] : workers[w].shards[s]) {
        auto& dst = into[k];
        for (int m = 0; m < 12; ++m) dst[m] += v[m];
      }
      ShardMap().swap(workers[w].shards[s]);
    }
    auto& out = per_shard[s];
    out.reserve(into.size());
    for (auto& node : into) out.emplace_back(node.first, node.second);
    ShardMap().swap(into);
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  });
  // k-way merge of sorted shards; keys are disjoint across shards
  std::vector<Entry> all;
  std::size_t total = 0;
  for (auto& v : per_shard) total += v.size();
  all.reserve(total);
  using Cursor = std::pair<std::size_t, std::size_t>;
  auto greater = [&](const Cursor& a, const Cursor& b) {
    return per_shard[a.first][a.second].first > per_shard[b.first][b.second].first;
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
  for (std::size_t s = 0; s < nshards; ++s)
    if (!per_shard[s].empty()) heap.emplace(s, 0);
  while (!heap.empty()) {
    auto [s, i] = heap.top();
    heap.pop();
    all.push_back(std::move(per_shard[s][i]));
    if (i + 1 < per_shard[s].size()) heap.emplace(s, i + 1);
  }
  return all;
}

// Sorted run files for spill-to-disk merging.
class SpillRuns {
 public:
  explicit SpillRuns(const std::filesystem::path& parent) : parent_(parent) {}
  SpillRuns(const SpillRuns&) = delete;
  SpillRuns& operator=(const SpillRuns&) = delete;
  ~SpillRuns() {
    std::error_code ec;
    if (!dir_.empty()) std::filesystem::remove_all(dir_, ec);
  }

  void write(const std::vector<Entry>& entries) {
    if (dir_.empty()) {
      const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
      dir_ = parent_ / ("subconflict-spill-" + std::to_string(rng::mix(stamp, reinterpret_cast<std::uintptr_t>(this))));
      std::filesystem::create_directories(dir_);
    }
    const auto path = dir_ / ("run" + std::to_string(paths_.size()) + ".bin");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot create spill file " + path.string());
    for (const auto& [key, months] : entries) {
      const std::uint32_t len = static_cast<std::uint32_t>(key.size());
      out.write(reinterpret_cast<const char*>(&len), sizeof len);
      out.write(key.data(), len);
      out.write(reinterpret_cast<const char*>(months.data()), sizeof(MonthCounts));
    }
    if (!out) throw InputError("failed writing spill file " + path.string());
    paths_.push_back(path);
  }

  std::size_t size() const { return paths_.size(); }

  // Merges all runs plus the in-memory tail; equal keys are summed.
  std::vector<Entry> merge(std::vector<Entry> tail) const {
    struct Run {
      std::ifstream in;
      Entry current;
      bool valid = false;
      void advance() {
        std::uint32_t len = 0;
        valid = static_cast<bool>(in.read(reinterpret_cast<char*>(&len), sizeof len));
        if (!valid) return;
        current.first.resize(len);
        in.read(current.first.data(), len);
        in.read(reinterpret_cast<char*>(current.second.data()), sizeof(MonthCounts));
        if (!in) throw InputError("truncated spill file");
      }
    };
    std::vector<std::unique_ptr<Run>> runs;
    for (const auto& p : paths_) {
      auto r = std::make_unique<Run>();
      r->in.open(p, std::ios::binary);
      if (!r->in) throw InputError("cannot reopen spill file " + p.string());
      r->advance();
      runs.push_back(std::move(r));
    }
    std::size_t tail_pos = 0;
    std::vector<Entry> out;
    for (;;) {
      const std::string* best = nullptr;
      for (const auto& r : runs)
        if (r->valid && (!best || r->current.first < *best)) best = &r->current.first;
      if (tail_pos < tail.size() && (!best || tail[tail_pos].first < *best)) best = &tail[tail_pos].first;
      if (!best) break;
      Entry merged{*best, MonthCounts{}};
      for (auto& r : runs) {
        if (r->valid && r->current.first == merged.first) {
          for (int m = 0; m < 12; ++m) merged.second[m] += r->current.second[m];
          r->advance();
        }
      }
      if (tail_pos < tail.size() && tail[tail_pos].first == merged.first) {
        for (int m = 0; m < 12; ++m) merged.second[m] += tail[tail_pos].second[m];
        ++tail_pos;
      }
      out.push_back(std::move(merged));
    }
    return out;
  }

 private:
  std::filesystem::path parent_;
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> paths_;
};

AggregateTable expand(const std::vector<Entry>& entries) {
  AggregateTable table;
  for (const auto& [key, months] : entries) {
    const auto sep = key.find('\0');
    const std::string_view author(key.data(), sep);
    const std::string_view sub(key.data() + sep + 1, key.size() - sep - 1);
    for (int m = 0; m < 12; ++m) {
      if (months[m].empty()) continue;
      table.push_back({std::string(author), std::string(sub), m + 1, months[m]});
    }
  }
  return table;
}

// Byte source abstraction for plain streams and gzip files.
class Source {
 public:
  virtual ~Source() = default;
  virtual std::size_t read(char* buf, std::size_t n) = 0;
};

class StreamSource final : public Source {
 public:
  explicit StreamSource(std::istream& in) : in_(in) {}
  std::size_t read(char* buf, std::size_t n) override {
    in_.read(buf, static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in_.gcount());
  }

 private:
  std::istream& in_;
};

class BufferSource final : public Source {
 public:
  explicit BufferSource(std::string_view text) : text_(text) {}
  std::size_t read(char* buf, std::size_t n) override {
    const std::size_t k = std::min(n, text_.size() - pos_);
    std::memcpy(buf, text_.data() + pos_, k);
    pos_ += k;
    return k;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class GzipSource final : public Source {
 public:
  explicit GzipSource(const std::filesystem::path& path) : file_(gzopen(path.c_str(), "rb")) {
    if (!file_) throw InputError("cannot open " + path.string());
    gzbuffer(file_, 1u << 20);
  }
  ~GzipSource() override { gzclose(file_); }
  GzipSource(const GzipSource&) = delete;
  GzipSource& operator=(const GzipSource&) = delete;

  std::size_t read(char* buf, std::size_t n) override {
    std::size_t got = 0;
    while (got < n) {
      const unsigned want = static_cast<unsigned>(std::min<std::size_t>(n - got, 1u << 30));
      const int r = gzread(file_, buf + got, want);
      if (r < 0) {
        int errnum = 0;
        throw InputError(std::string("gzip decompression failed: ") + gzerror(file_, &errnum));
      }
      if (r == 0) break;
      got += static_cast<std::size_t>(r);
    }
    return got;
  }

 private:
  gzFile file_;
};

IngestResult ingest_source(Source& src, const IngestOptions& options) {
  options.parse.window.validate();
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t block_bytes = std::max<std::size_t>(options.block_bytes, 64);

  std::vector<Worker> workers(threads);
  for (auto& w : workers) w.shards.resize(threads);
  SpillRuns runs(options.spill_dir);

  std::string buffer;
  std::size_t carry = 0;  // bytes of an incomplete line kept at the front of buffer
  std::uint64_t stream_offset = 0;
  std::uint64_t line_base = 0;
  bool eof = false;

  while (!eof || carry > 0) {
    buffer.resize(carry + block_bytes);
    std::size_t got = 0;
    if (!eof) {
      got = src.read(buffer.data() + carry, block_bytes);
      if (got < block_bytes) eof = true;
    }
    buffer.resize(carry + got);
    std::size_t usable;
    bool final_piece = false;
    const auto last_nl = buffer.rfind('\n');
    if (eof) {
      usable = buffer.size();
      final_piece = true;
    } else if (last_nl == std::string::npos) {
      carry = buffer.size();  // a single line longer than the block; keep reading
      continue;
    } else {
      usable = last_nl + 1;
    }
    const std::string_view block(buffer.data(), usable);

    // split at line boundaries, one chunk per worker
    std::vector<std::size_t> bounds{0};
    for (unsigned w = 1; w < threads; ++w) {
      std::size_t target = std::max(bounds.back(), block.size() * w / threads);
      if (target >= block.size()) break;
      const auto nl = block.find('\n', target == 0 ? 0 : target - 1);
      if (nl == std::string_view::npos || nl + 1 >= block.size()) break;
      if (nl + 1 > bounds.back()) bounds.push_back(nl + 1);
    }
    bounds.push_back(block.size());
    const std::size_t nchunks = bounds.size() - 1;

    parallel_for(nchunks, threads, [&](std::size_t c) {
      workers[c].process(block.substr(bounds[c], bounds[c + 1] - bounds[c]), options.parse,
                         final_piece && c + 1 == nchunks);
    });

    std::uint64_t lines_before = line_base;
    for (std::size_t c = 0; c < nchunks; ++c) {
      Worker& w = workers[c];
      if (w.faulted) {
        throw CorruptInputError("malformed record: " + w.fault_message, stream_offset + bounds[c] + w.fault_offset,
                                lines_before + w.fault_line);
      }
      lines_before += w.chunk_lines;
    }
    line_base = lines_before;
    stream_offset += usable;
    buffer.erase(0, usable);
    carry = buffer.size();

    if (options.max_keys_in_memory > 0 && key_count(workers) > options.max_keys_in_memory) {
      runs.write(drain_sorted(workers, threads));
    }
    if (eof && carry == 0) break;
  }

  IngestResult result;
  std::vector<Entry> tail = drain_sorted(workers, threads);
  result.report.spilled_runs = runs.size();
  result.stats = expand(runs.size() > 0 ? runs.merge(std::move(tail)) : tail);
  for (const auto& w : workers) {
    result.report.lines += w.lines;
    result.report.records += w.records;
    for (std::size_t r = 0; r < kAllSkipReasons.size(); ++r)
      if (w.skips[r]) result.report.skips[kAllSkipReasons[r]] += w.skips[r];
  }
  SUBCONFLICT_ASSERT(result.report.records + result.report.skipped() == result.report.lines,
                     "ingest conservation violated");
  return result;
}

}  // namespace

ParseResult parse_record(std::string_view line, const ParseOptions& options) {
  LineScratch scratch;
  RecordView view;
  SkipReason reason{};
  try {
    if (!scan_line(line, options, scratch, view, reason)) return Skip{reason};
  } catch (const SyntaxFault& f) {
    throw CorruptInputError(std::string("malformed record: ") + f.message, f.offset, 1);
  }
  return CommentRecord{std::string(view.author), std::string(view.subreddit), view.score, view.created,
                       std::string(view.id)};
}

AggregateTable aggregate(std::span<const CommentRecord> records, const AnalysisWindow& window) {
  std::map<std::tuple<std::string, std::string, int>, PolarityCounts> acc;
  for (const auto& r : records) {
    const int month = window.month_of(r.created_utc);
    if (month == 0) continue;
    add(acc[{r.author, r.subreddit, month}], r.score);
  }
  AggregateTable out;
  out.reserve(acc.size());
  for (auto& [key, counts] : acc) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), counts});
  return out;
}

IngestResult ingest_stream(std::istream& in, const IngestOptions& options) {
  StreamSource src(in);
  return ingest_source(src, options);
}

IngestResult ingest_buffer(std::string_view text, const IngestOptions& options) {
  BufferSource src(text);
  return ingest_source(src, options);
}

IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
  if (!std::filesystem::exists(path)) throw InputError("input file not found: " + path.string());
  if (path.extension() == ".gz") {
    GzipSource src(path);
    return ingest_source(src, options);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  StreamSource src(in);
  return ingest_source(src, options);
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& table) {
  csv::write_row(out, kAggregateHeader);
  for (const auto& s : table) {
    out << csv::escape(s.author) << ',' << csv::escape(s.subreddit) << ',' << s.month << ',' << s.counts.pos << ','
        << s.counts.neg << ',' << s.counts.neu << '\n';
  }
}

AggregateTable read_aggregate_csv(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  reader.expect_header(kAggregateHeader);
  AggregateTable table;
  std::vector<std::string> row;
  while (reader.next(row)) {
    const auto where = source_name + ":" + std::to_string(reader.line());
    if (row.size() != kAggregateHeader.size()) throw InputError(where + ": expected 6 columns");
    AuthorSubredditStat s{row[0], row[1], static_cast<int>(parse_int(row[2])),
                          {parse_int(row[3]), parse_int(row[4]), parse_int(row[5])}};
    if (s.author.empty() || s.subreddit.empty()) throw InputError(where + ": empty identifier");
    if (s.month < 1 || s.month > 12) throw InputError(where + ": month out of range");
    if (s.counts.pos < 0 || s.counts.neg < 0 || s.counts.neu < 0) throw InputError(where + ": negative count");
    if (!table.empty()) {
      const auto& p = table.back();
      if (std::tie(p.author, p.subreddit, p.month) >= std::tie(s.author, s.subreddit, s.month))
        throw InputError(where + ": rows not sorted by (author, subreddit, month) or duplicated");
    }
    table.push_back(std::move(s));
  }
  return table;
}

}  // namespace subconflict
