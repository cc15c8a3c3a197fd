#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reseq/catalog_index.hpp"
#include "reseq/constraint.hpp"
#include "reseq/time.hpp"

namespace reseq {

enum class StrategyKind { None, Popularity, LastKRecency, LastKRanked, LastKEqual };

// How step 3 of the substitution filter ranks candidate colors.
//   None          skip the color step
//   Popularity    most frequent color in the compatible pool
//   LastKRecency  the most recently emitted of the last k colors, else popularity
//   LastKRanked   the most recently emitted of the last k colors, else all tied
//   LastKEqual    any of the last k colors, all with the same priority
struct SubstitutionStrategy {
  StrategyKind kind = StrategyKind::LastKEqual;
  int k = 3;

  bool operator==(const SubstitutionStrategy&) const = default;

  /// "last_k_equal" | "last_k_recency" | "last_k_ranked" | "popularity" | "none".
  static SubstitutionStrategy parse(std::string_view name, int k);
  /// LastKEqual(k), or None for k = 0.
  static SubstitutionStrategy last_k_equal(int k);
  std::string name() const;
};

struct Candidate {
  OrderHandle order = 0;
  Weight violation{0};
  Date due;
  ColorCode color = 0;
  std::int64_t blend = 0;
};

/// Colors kept by step 3, or nullopt when the step is skipped. `present` lists the
/// distinct candidate colors; `recent` is most-recent-first; `popularity` is indexed by
/// color code.
std::optional<std::vector<ColorCode>> color_filter(const SubstitutionStrategy& strategy,
                                                   std::span<const ColorCode> present,
                                                   std::span<const ColorCode> recent,
                                                   std::span<const std::size_t> popularity);

/// Allocation-free form of color_filter: returns false when the step is skipped,
/// otherwise leaves the kept colors in `kept`.
bool color_filter_into(const SubstitutionStrategy& strategy, std::span<const ColorCode> present,
                       std::span<const ColorCode> recent, std::span<const std::size_t> popularity,
                       std::vector<ColorCode>& kept);

/// Full filter chain over an explicit candidate list: fewest violations, earliest due
/// date, strategy color filter, smallest blend number.
std::optional<Candidate> select_best(std::span<const Candidate> candidates, const SubstitutionStrategy& strategy,
                                     std::span<const ColorCode> recent, std::span<const std::size_t> popularity);

}  // namespace reseq
