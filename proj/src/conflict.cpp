#include "subconflict/conflict.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>

#include "subconflict/format.hpp"

namespace subconflict {

PresenceIndex::PresenceIndex(const Activity& activity, std::span<const AuthorId> population,
                             std::int64_t min_sub_comments)
    : activity_(&activity), by_sub_(activity.vocab().subreddit_count()) {
  std::vector<AuthorId> sorted(population.begin(), population.end());
  std::sort(sorted.begin(), sorted.end());
  for (AuthorId a : sorted)
    for (const auto& p : activity.of(a))
      if (p.counts.total() > min_sub_comments) by_sub_[p.sub].push_back(a);
}

std::vector<AuthorId> PresenceIndex::common(SubId a, SubId b) const {
  std::vector<AuthorId> out;
  std::set_intersection(by_sub_[a].begin(), by_sub_[a].end(), by_sub_[b].begin(), by_sub_[b].end(),
                        std::back_inserter(out));
  return out;
}

std::int64_t PresenceIndex::common_count(SubId a, SubId b) const {
  const auto& x = by_sub_[a];
  const auto& y = by_sub_[b];
  std::int64_t n = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<AuthorId> common_authors(SubId a, SubId b, const Activity& activity, std::span<const AuthorId> qualified,
                                     std::int64_t min_sub_comments) {
  std::vector<AuthorId> out;
  for (AuthorId u : qualified) {
    const auto* ca = activity.find(u, a);
    const auto* cb = activity.find(u, b);
    if (ca && cb && ca->total() > min_sub_comments && cb->total() > min_sub_comments) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConflictCandidate> candidate_edges(std::span<const HomeAssignment> controversial,
                                               const PresenceIndex& common_index, std::int64_t min_pair_authors,
                                               const std::vector<bool>* allowed) {
  const auto ok = [&](SubId s) { return !allowed || (s < allowed->size() && (*allowed)[s]); };
  std::map<std::pair<SubId, SubId>, std::vector<AuthorId>> directed;
  for (const auto& h : controversial) {
    for (SubId a : h.social) {
      if (!ok(a)) continue;
      for (SubId b : h.antisocial) {
        if (!ok(b)) continue;
        SUBCONFLICT_ASSERT(a != b, "social and anti-social homes overlap");
        directed[{a, b}].push_back(h.author);
      }
    }
  }
  std::vector<ConflictCandidate> out;
  for (auto& [key, authors] : directed) {
    const auto [a, b] = key;
    const auto rev = directed.find({b, a});
    const std::int64_t k1 = static_cast<std::int64_t>(authors.size());
    const std::int64_t k2 = rev == directed.end() ? 0 : static_cast<std::int64_t>(rev->second.size());
    if (k1 + k2 < min_pair_authors) continue;
    ConflictCandidate c;
    c.source = a;
    c.target = b;
    c.k = k1;
    c.n_common = common_index.common_count(a, b);
    SUBCONFLICT_ASSERT(c.n_common >= c.k && c.n_common > 0,
                       "controversial authors must be common authors of their homes");
    c.authors = authors;  // copy: the reverse direction still needs its size
    std::sort(c.authors.begin(), c.authors.end());
    out.push_back(std::move(c));
  }
  return out;  // std::map iteration order is already (source, target)
}

void write_candidates_csv(std::ostream& out, std::span<const ConflictCandidate> candidates, const Vocabulary& vocab) {
  csv::write_row(out, kCandidatesHeader);
  for (const auto& c : candidates)
    out << csv::escape(vocab.subreddit(c.source)) << ',' << csv::escape(vocab.subreddit(c.target)) << ',' << c.k << ','
        << c.n_common << ',' << format_double(c.weight()) << '\n';
}

void write_candidate_authors_csv(std::ostream& out, std::span<const ConflictCandidate> candidates,
                                 const Vocabulary& vocab) {
  csv::write_row(out, kCandidateAuthorsHeader);
  for (const auto& c : candidates)
    for (AuthorId a : c.authors)
      out << csv::escape(vocab.subreddit(c.source)) << ',' << csv::escape(vocab.subreddit(c.target)) << ','
          << csv::escape(vocab.author(a)) << '\n';
}

std::vector<ConflictCandidate> read_candidates_csv(std::istream& in, const std::string& source_name,
                                                   const Vocabulary& vocab) {
  csv::Reader reader(in, source_name);
  reader.expect_header(kCandidatesHeader);
  std::vector<ConflictCandidate> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    const auto where = source_name + ":" + std::to_string(reader.line());
    if (row.size() != kCandidatesHeader.size()) throw InputError(where + ": expected 5 columns");
    const auto s = vocab.find_subreddit(row[0]);
    const auto t = vocab.find_subreddit(row[1]);
    if (!s || !t) throw InputError(where + ": subreddit not present in the aggregate");
    ConflictCandidate c;
    c.source = *s;
    c.target = *t;
    c.k = parse_int(row[2]);
    c.n_common = parse_int(row[3]);
    if (c.k <= 0 || c.n_common < c.k || c.source == c.target) throw InputError(where + ": inconsistent candidate");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace subconflict
