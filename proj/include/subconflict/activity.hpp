#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subconflict/common.hpp"
#include "subconflict/corpus.hpp"

namespace subconflict {

/// Interned author and subreddit names. Ids follow lexicographic name order,
/// so iterating by id is iterating in sorted name order.
class Vocabulary {
 public:
  Vocabulary(std::vector<std::string> authors, std::vector<std::string> subreddits);

  std::size_t author_count() const { return authors_.size(); }
  std::size_t subreddit_count() const { return subreddits_.size(); }
  const std::string& author(AuthorId id) const { return authors_[id]; }
  const std::string& subreddit(SubId id) const { return subreddits_[id]; }
  std::optional<AuthorId> find_author(std::string_view name) const;
  std::optional<SubId> find_subreddit(std::string_view name) const;

 private:
  std::vector<std::string> authors_;
  std::vector<std::string> subreddits_;
};

struct Presence {
  SubId sub;
  PolarityCounts counts;
};

/// Per-author activity over one time window (the whole year or one month).
/// Each author's list is sorted by subreddit id and holds no empty entries.
class Activity {
 public:
  Activity(std::shared_ptr<const Vocabulary> vocab, std::vector<std::vector<Presence>> by_author);

  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocab_ptr() const { return vocab_; }
  std::span<const Presence> of(AuthorId a) const { return by_author_[a]; }
  const PolarityCounts* find(AuthorId a, SubId s) const;
  std::int64_t total(AuthorId a) const;
  std::size_t author_count() const { return by_author_.size(); }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::vector<Presence>> by_author_;
};

/// The aggregate table indexed by interned ids, holding all twelve months.
class StatsIndex {
 public:
  explicit StatsIndex(const AggregateTable& table);

  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocab_ptr() const { return vocab_; }

  /// Sum over all months.
  Activity yearly() const;
  /// One month (1-12).
  Activity monthly(int month) const;

 private:
  struct Row {
    SubId sub;
    std::array<PolarityCounts, 12> months;
  };
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::vector<Row>> rows_;
};

}  // namespace subconflict
