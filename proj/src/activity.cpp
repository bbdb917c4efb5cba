#include "subconflict/activity.hpp"

#include <algorithm>

namespace subconflict {

namespace {
template <class Names>
std::optional<std::uint32_t> lookup(const Names& names, std::string_view name) {
  const auto it = std::lower_bound(names.begin(), names.end(), name,
                                   [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names.end() || *it != name) return std::nullopt;
  return static_cast<std::uint32_t>(it - names.begin());
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> authors, std::vector<std::string> subreddits)
    : authors_(std::move(authors)), subreddits_(std::move(subreddits)) {
  sort_unique(authors_);
  sort_unique(subreddits_);
}

std::optional<AuthorId> Vocabulary::find_author(std::string_view name) const { return lookup(authors_, name); }
std::optional<SubId> Vocabulary::find_subreddit(std::string_view name) const { return lookup(subreddits_, name); }

Activity::Activity(std::shared_ptr<const Vocabulary> vocab, std::vector<std::vector<Presence>> by_author)
    : vocab_(std::move(vocab)), by_author_(std::move(by_author)) {
  SUBCONFLICT_ASSERT(by_author_.size() == vocab_->author_count(), "activity size mismatch");
}

const PolarityCounts* Activity::find(AuthorId a, SubId s) const {
  const auto& list = by_author_[a];
  const auto it = std::lower_bound(list.begin(), list.end(), s, [](const Presence& p, SubId x) { return p.sub < x; });
  return (it != list.end() && it->sub == s) ? &it->counts : nullptr;
}

std::int64_t Activity::total(AuthorId a) const {
  std::int64_t n = 0;
  for (const auto& p : by_author_[a]) n += p.counts.total();
  return n;
}

StatsIndex::StatsIndex(const AggregateTable& table) {
  std::vector<std::string> authors, subs;
  for (const auto& s : table) {
    if (authors.empty() || authors.back() != s.author) authors.push_back(s.author);
    subs.push_back(s.subreddit);
  }
  vocab_ = std::make_shared<const Vocabulary>(std::move(authors), std::move(subs));
  rows_.resize(vocab_->author_count());
  for (const auto& s : table) {
    const AuthorId a = *vocab_->find_author(s.author);
    const SubId sub = *vocab_->find_subreddit(s.subreddit);
    auto& list = rows_[a];
    auto it = std::lower_bound(list.begin(), list.end(), sub, [](const Row& r, SubId x) { return r.sub < x; });
    if (it == list.end() || it->sub != sub) it = list.insert(it, Row{sub, {}});
    it->months[s.month - 1] += s.counts;
  }
}

Activity StatsIndex::yearly() const {
  std::vector<std::vector<Presence>> out(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    out[a].reserve(rows_[a].size());
    for (const auto& r : rows_[a]) {
      PolarityCounts sum;
      for (const auto& m : r.months) sum += m;
      if (!sum.empty()) out[a].push_back({r.sub, sum});
    }
  }
  return Activity(vocab_, std::move(out));
}

Activity StatsIndex::monthly(int month) const {
  SUBCONFLICT_ASSERT(month >= 1 && month <= 12, "month out of range");
  std::vector<std::vector<Presence>> out(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (const auto& r : rows_[a]) {
      const auto& c = r.months[month - 1];
      if (!c.empty()) out[a].push_back({r.sub, c});
    }
  }
  return Activity(vocab_, std::move(out));
}

}  // namespace subconflict
