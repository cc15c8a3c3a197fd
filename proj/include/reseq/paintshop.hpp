#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "reseq/catalog_index.hpp"
#include "reseq/metrics.hpp"

namespace reseq {

struct PaintShopConfig {
  std::size_t primer_lanes = 6;
  std::size_t primer_per_lane_capacity = 8;
  std::size_t sealer_buffer_lanes = 4;  // the sealer stage is a pure delay
  std::size_t paint_lane_count = 2;
  double repaint_rate = 0.0;
  std::uint64_t rng_seed = 0;
  // Occupancy the primer buffer is filled to before paint lanes start pulling;
  // defaults to full capacity.
  std::optional<std::size_t> fill_target;

  bool operator==(const PaintShopConfig&) const = default;
  void validate() const;
};

/// A body travelling through the paint shop. `tag` is carried along untouched
/// (the harness uses the blend number).
struct PaintItem {
  ColorCode color = 0;
  std::int64_t tag = 0;
  bool operator==(const PaintItem&) const = default;
};

struct PaintOutcome {
  std::vector<std::vector<PaintItem>> lanes;  // painting order per paint lane
  std::size_t painted = 0;
  std::size_t batch_count = 0;
  std::size_t repaints = 0;
  Rational aabs{0};

  std::vector<ColorCode> lane_colors(std::size_t lane) const;
};

PaintOutcome simulate_paintshop(std::span<const PaintItem> input, const PaintShopConfig& config);
PaintOutcome simulate_paintshop(std::span<const ColorCode> colors, const PaintShopConfig& config);
Rational assessed_abs(std::span<const ColorCode> colors, const PaintShopConfig& config);

}  // namespace reseq
