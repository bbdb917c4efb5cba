#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subconflict/activity.hpp"

namespace subconflict {

/// The five subreddits new accounts were auto-subscribed to in 2016.
inline const std::vector<std::string> kDefaultExcludedSubreddits{"AskReddit", "news", "worldnews", "pics", "videos"};

/// Subreddit ids excluded from home classification, as a membership mask.
class ExcludedSet {
 public:
  ExcludedSet(const Vocabulary& vocab, std::span<const std::string> names);
  bool contains(SubId s) const { return s < mask_.size() && mask_[s]; }

 private:
  std::vector<bool> mask_;
};

/// Social and anti-social homes of one author; both lists sorted, disjoint.
struct HomeAssignment {
  AuthorId author = 0;
  std::vector<SubId> social;
  std::vector<SubId> antisocial;

  bool controversial() const { return !social.empty() && !antisocial.empty(); }
  friend bool operator==(const HomeAssignment&, const HomeAssignment&) = default;
};

/// Authors whose total comment count in `activity` is strictly above
/// `min_total`. Every subreddit counts, defaults included. Sorted.
std::vector<AuthorId> qualified_authors(const Activity& activity, std::int64_t min_total);

/// Social home: more than `min_sub_comments` comments and n_pos > n_neg.
/// Anti-social home: same presence and n_neg > n_pos. Ties are neither.
HomeAssignment classify_homes(AuthorId author, const Activity& activity, std::int64_t min_sub_comments,
                              const ExcludedSet& excluded);

std::vector<HomeAssignment> classify_all(std::span<const AuthorId> authors, const Activity& activity,
                                         std::int64_t min_sub_comments, const ExcludedSet& excluded);

/// Assignments with at least one social and one anti-social home.
std::vector<HomeAssignment> controversial_authors(std::span<const HomeAssignment> assignments);

// homes artifact: "author,subreddit,home_type", sorted by author then subreddit
inline const std::vector<std::string> kHomesHeader{"author", "subreddit", "home_type"};
void write_homes_csv(std::ostream& out, std::span<const HomeAssignment> homes, const Vocabulary& vocab);
/// Authors or subreddits unknown to `vocab` are an input error.
std::vector<HomeAssignment> read_homes_csv(std::istream& in, const std::string& source_name, const Vocabulary& vocab);

}  // namespace subconflict
