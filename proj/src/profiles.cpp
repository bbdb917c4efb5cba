#include "subconflict/profiles.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "subconflict/format.hpp"

namespace subconflict {

ExcludedSet::ExcludedSet(const Vocabulary& vocab, std::span<const std::string> names)
    : mask_(vocab.subreddit_count(), false) {
  for (const auto& n : names)
    if (auto id = vocab.find_subreddit(n)) mask_[*id] = true;
}

std::vector<AuthorId> qualified_authors(const Activity& activity, std::int64_t min_total) {
  std::vector<AuthorId> out;
  for (AuthorId a = 0; a < activity.author_count(); ++a)
    if (activity.total(a) > min_total) out.push_back(a);
  return out;
}

HomeAssignment classify_homes(AuthorId author, const Activity& activity, std::int64_t min_sub_comments,
                              const ExcludedSet& excluded) {
  HomeAssignment h{author, {}, {}};
  for (const auto& p : activity.of(author)) {
    if (p.counts.total() <= min_sub_comments || excluded.contains(p.sub)) continue;
    if (p.counts.pos > p.counts.neg) h.social.push_back(p.sub);
    else if (p.counts.neg > p.counts.pos) h.antisocial.push_back(p.sub);
  }
  return h;
}

std::vector<HomeAssignment> classify_all(std::span<const AuthorId> authors, const Activity& activity,
                                         std::int64_t min_sub_comments, const ExcludedSet& excluded) {
  std::vector<HomeAssignment> out;
  out.reserve(authors.size());
  for (AuthorId a : authors) out.push_back(classify_homes(a, activity, min_sub_comments, excluded));
  return out;
}

std::vector<HomeAssignment> controversial_authors(std::span<const HomeAssignment> assignments) {
  std::vector<HomeAssignment> out;
  for (const auto& h : assignments)
    if (h.controversial()) out.push_back(h);
  return out;
}

void write_homes_csv(std::ostream& out, std::span<const HomeAssignment> homes, const Vocabulary& vocab) {
  csv::write_row(out, kHomesHeader);
  for (const auto& h : homes) {
    // merge the two sorted lists so rows are sorted by subreddit name
    std::vector<std::pair<SubId, bool>> rows;
    for (SubId s : h.social) rows.emplace_back(s, true);
    for (SubId s : h.antisocial) rows.emplace_back(s, false);
    std::sort(rows.begin(), rows.end());
    for (const auto& [s, social] : rows)
      out << csv::escape(vocab.author(h.author)) << ',' << csv::escape(vocab.subreddit(s)) << ','
          << (social ? "social" : "antisocial") << '\n';
  }
}

std::vector<HomeAssignment> read_homes_csv(std::istream& in, const std::string& source_name, const Vocabulary& vocab) {
  csv::Reader reader(in, source_name);
  reader.expect_header(kHomesHeader);
  std::map<AuthorId, HomeAssignment> by_author;
  std::vector<std::string> row;
  while (reader.next(row)) {
    const auto where = source_name + ":" + std::to_string(reader.line());
    if (row.size() != 3) throw InputError(where + ": expected 3 columns");
    const auto a = vocab.find_author(row[0]);
    const auto s = vocab.find_subreddit(row[1]);
    if (!a || !s) throw InputError(where + ": author or subreddit not present in the aggregate");
    auto& h = by_author[*a];
    h.author = *a;
    if (row[2] == "social") h.social.push_back(*s);
    else if (row[2] == "antisocial") h.antisocial.push_back(*s);
    else throw InputError(where + ": home_type must be 'social' or 'antisocial'");
  }
  std::vector<HomeAssignment> out;
  for (auto& [_, h] : by_author) {
    std::sort(h.social.begin(), h.social.end());
    std::sort(h.antisocial.begin(), h.antisocial.end());
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace subconflict
