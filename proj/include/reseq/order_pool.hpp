#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "reseq/catalog_index.hpp"
#include "reseq/selection.hpp"

namespace reseq {

// Unconsumed orders, indexed body type -> constraint signature -> due date -> color,
// each color run sorted by blend number. The filter chain only ever needs the front of
// these groups, so a selection costs O(signatures + colors) instead of O(pool).
// consume/restore are exact inverses, which is what virtual lookahead relies on.
class OrderPool {
 public:
  explicit OrderPool(const CatalogIndex& index);

  std::size_t size() const { return alive_total_; }
  std::size_t size(BodyTypeCode b) const { return b < pools_.size() ? pools_[b].alive : 0; }
  bool contains(OrderHandle h) const { return alive_.at(h) != 0; }

  /// Pool count per color code among orders of body type `b`.
  std::span<const std::size_t> color_counts(BodyTypeCode b) const { return pools_.at(b).color_counts; }

  void consume(OrderHandle h);
  void restore(OrderHandle h);

  /// Filter chain restricted to orders of body type `b`. `violated` flags each constraint.
  std::optional<Candidate> best(BodyTypeCode b, const std::vector<char>& violated,
                                const SubstitutionStrategy& strategy, std::span<const ColorCode> recent) const;

 private:
  struct ColorRun {
    ColorCode color = 0;
    std::vector<OrderHandle> orders;  // ascending blend
    std::size_t cursor = 0;           // first alive entry
    std::size_t alive = 0;
  };
  struct DueBucket {
    Date due;
    std::vector<ColorRun> runs;
    std::size_t alive = 0;
  };
  struct SignatureGroup {
    SignatureId signature = 0;
    std::vector<DueBucket> buckets;  // ascending due date
    std::size_t cursor = 0;          // first bucket with alive orders
    std::size_t alive = 0;
  };
  struct BodyPool {
    std::vector<SignatureGroup> groups;
    std::vector<std::size_t> color_counts;
    std::size_t alive = 0;
  };
  struct Location {
    std::uint32_t group = 0, bucket = 0, run = 0, pos = 0;
  };

  const CatalogIndex* index_;
  std::vector<BodyPool> pools_;
  std::vector<Location> where_;
  std::vector<char> alive_;
  std::size_t alive_total_ = 0;
};

}  // namespace reseq
