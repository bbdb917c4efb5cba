#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subconflict/activity.hpp"
#include "subconflict/profiles.hpp"

namespace subconflict {

/// For each subreddit, the sorted authors of a population (usually the
/// qualified authors) with more than `min_sub_comments` comments there.
class PresenceIndex {
 public:
  PresenceIndex(const Activity& activity, std::span<const AuthorId> population, std::int64_t min_sub_comments);

  std::span<const AuthorId> authors_in(SubId s) const { return by_sub_[s]; }
  std::vector<AuthorId> common(SubId a, SubId b) const;
  std::int64_t common_count(SubId a, SubId b) const;
  const Activity& activity() const { return *activity_; }

 private:
  const Activity* activity_;
  std::vector<std::vector<AuthorId>> by_sub_;
};

/// Authors from `qualified` with more than `min_sub_comments` comments in both a and b.
std::vector<AuthorId> common_authors(SubId a, SubId b, const Activity& activity, std::span<const AuthorId> qualified,
                                     std::int64_t min_sub_comments);

/// Directed candidate A -> B. `authors` are the k controversial authors with a
/// social home in A and an anti-social home in B.
struct ConflictCandidate {
  SubId source = 0;
  SubId target = 0;
  std::int64_t k = 0;
  std::int64_t n_common = 0;
  std::vector<AuthorId> authors;

  double weight() const { return static_cast<double>(k) / static_cast<double>(n_common); }
};

/// Unordered pairs are admitted when k(A->B) + k(B->A) >= min_pair_authors;
/// each admitted direction with k > 0 becomes a candidate. When `allowed` is
/// given, pairs with an endpoint outside it are ignored. Sorted by (source, target).
std::vector<ConflictCandidate> candidate_edges(std::span<const HomeAssignment> controversial,
                                               const PresenceIndex& common_index, std::int64_t min_pair_authors,
                                               const std::vector<bool>* allowed = nullptr);

inline const std::vector<std::string> kCandidatesHeader{"source", "target", "k", "n_common", "weight"};
inline const std::vector<std::string> kCandidateAuthorsHeader{"source", "target", "author"};
void write_candidates_csv(std::ostream& out, std::span<const ConflictCandidate> candidates, const Vocabulary& vocab);
void write_candidate_authors_csv(std::ostream& out, std::span<const ConflictCandidate> candidates,
                                 const Vocabulary& vocab);

/// Reads the candidate table back; authors are left empty.
std::vector<ConflictCandidate> read_candidates_csv(std::istream& in, const std::string& source_name,
                                                   const Vocabulary& vocab);

}  // namespace subconflict
