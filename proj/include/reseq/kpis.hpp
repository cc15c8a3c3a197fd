#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>

#include "reseq/catalog_index.hpp"
#include "reseq/metrics.hpp"
#include "reseq/paintshop.hpp"

namespace reseq {

struct SortednessSummary {
  int lds = 0;
  Rational expected_length{0};
  Rational median_length{0};
};

// Quality measures of one car sequence, including what the paint shop makes of it.
struct SequenceKpis {
  std::size_t cars = 0;
  BatchStats batches;
  std::size_t changeovers = 0;
  std::optional<Rational> cpc;
  std::map<std::size_t, std::size_t> differentiation;  // empty when shorter than the window
  Rational aabs{0};
  std::size_t paint_batches = 0;
  std::size_t paint_changeovers = 0;  // summed over paint lanes
  std::optional<SortednessSummary> sortedness;
};

inline constexpr std::size_t kDifferentiationWindow = 50;

SortednessSummary summarize_sortedness(std::span<const std::int64_t> blends);

/// `blends` may be empty (sortedness is then omitted) or parallel to `colors`.
SequenceKpis sequence_kpis(std::span<const ColorCode> colors, std::span<const std::int64_t> blends,
                           const PaintShopConfig& paintshop);

/// Sum over lanes of (batches - 1) for every lane that painted something.
std::size_t paint_changeovers(const PaintOutcome& outcome);

}  // namespace reseq
