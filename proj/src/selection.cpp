#include "reseq/selection.hpp"

#include <algorithm>

#include "reseq/error.hpp"

namespace reseq {
namespace {

bool contains(std::span<const ColorCode> set, ColorCode c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

std::size_t count_of(std::span<const std::size_t> popularity, ColorCode c) {
  return c < popularity.size() ? popularity[c] : 0;
}

void most_popular(std::span<const ColorCode> present, std::span<const std::size_t> popularity,
                  std::vector<ColorCode>& out) {
  std::size_t best = 0;
  for (auto c : present) best = std::max(best, count_of(popularity, c));
  for (auto c : present) {
    if (count_of(popularity, c) == best) out.push_back(c);
  }
}

}  // namespace

SubstitutionStrategy SubstitutionStrategy::parse(std::string_view name, int k) {
  if (k < 0) throw Error(Errc::InvalidArgument, "k must be non-negative");
  SubstitutionStrategy s;
  s.k = k;
  if (name == "none") {
    s.kind = StrategyKind::None;
  } else if (name == "popularity") {
    s.kind = StrategyKind::Popularity;
  } else if (name == "last_k_recency") {
    s.kind = StrategyKind::LastKRecency;
  } else if (name == "last_k_ranked") {
    s.kind = StrategyKind::LastKRanked;
  } else if (name == "last_k_equal") {
    s.kind = StrategyKind::LastKEqual;
  } else {
    throw Error(Errc::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
  }
  bool last_k = s.kind == StrategyKind::LastKRecency || s.kind == StrategyKind::LastKRanked ||
                s.kind == StrategyKind::LastKEqual;
  if (last_k && k < 1) throw Error(Errc::InvalidArgument, "last-k strategies need k >= 1");
  return s;
}

SubstitutionStrategy SubstitutionStrategy::last_k_equal(int k) {
  if (k < 0) throw Error(Errc::InvalidArgument, "k must be non-negative");
  if (k == 0) return {StrategyKind::None, 0};
  return {StrategyKind::LastKEqual, k};
}

std::string SubstitutionStrategy::name() const {
  switch (kind) {
    case StrategyKind::None: return "none";
    case StrategyKind::Popularity: return "popularity";
    case StrategyKind::LastKRecency: return "last_k_recency";
    case StrategyKind::LastKRanked: return "last_k_ranked";
    case StrategyKind::LastKEqual: return "last_k_equal";
  }
  return "none";
}

bool color_filter_into(const SubstitutionStrategy& strategy, std::span<const ColorCode> present,
                       std::span<const ColorCode> recent, std::span<const std::size_t> popularity,
                       std::vector<ColorCode>& kept) {
  kept.clear();
  if (present.empty()) return false;
  const auto last_k = recent.first(std::min<std::size_t>(recent.size(), static_cast<std::size_t>(strategy.k)));

  switch (strategy.kind) {
    case StrategyKind::None:
      return false;
    case StrategyKind::Popularity:
      most_popular(present, popularity, kept);
      return true;
    case StrategyKind::LastKEqual:
      for (auto c : last_k) {
        if (contains(present, c)) kept.push_back(c);
      }
      return !kept.empty();
    case StrategyKind::LastKRanked:
    case StrategyKind::LastKRecency:
      for (auto c : last_k) {
        if (contains(present, c)) {
          kept.push_back(c);
          return true;
        }
      }
      if (strategy.kind == StrategyKind::LastKRanked) return false;
      most_popular(present, popularity, kept);
      return true;
  }
  return false;
}

std::optional<std::vector<ColorCode>> color_filter(const SubstitutionStrategy& strategy,
                                                   std::span<const ColorCode> present,
                                                   std::span<const ColorCode> recent,
                                                   std::span<const std::size_t> popularity) {
  std::vector<ColorCode> kept;
  if (!color_filter_into(strategy, present, recent, popularity, kept)) return std::nullopt;
  return kept;
}

std::optional<Candidate> select_best(std::span<const Candidate> candidates, const SubstitutionStrategy& strategy,
                                     std::span<const ColorCode> recent, std::span<const std::size_t> popularity) {
  if (candidates.empty()) return std::nullopt;

  Weight min_violation = candidates.front().violation;
  for (const auto& c : candidates) min_violation = std::min(min_violation, c.violation);
  std::optional<Date> earliest;
  for (const auto& c : candidates) {
    if (c.violation == min_violation && (!earliest || c.due < *earliest)) earliest = c.due;
  }
  thread_local std::vector<const Candidate*> pool;
  thread_local std::vector<ColorCode> present;
  thread_local std::vector<ColorCode> kept;
  pool.clear();
  present.clear();
  for (const auto& c : candidates) {
    if (c.violation == min_violation && c.due == *earliest) {
      pool.push_back(&c);
      if (!contains(present, c.color)) present.push_back(c.color);
    }
  }

  const bool filtered = color_filter_into(strategy, present, recent, popularity, kept);
  const Candidate* best = nullptr;
  for (const auto* c : pool) {
    if (filtered && !contains(kept, c->color)) continue;
    if (!best || c->blend < best->blend) best = c;
  }
  return *best;
}

}  // namespace reseq
