#include "reseq/kpis.hpp"

namespace reseq {

SortednessSummary summarize_sortedness(std::span<const std::int64_t> blends) {
  const auto s = sortedness(blends);
  return SortednessSummary{s.lds, s.expected_length, s.median_length};
}

std::size_t paint_changeovers(const PaintOutcome& outcome) {
  std::size_t total = 0;
  for (std::size_t lane = 0; lane < outcome.lanes.size(); ++lane) {
    total += color_changeovers(std::span<const ColorCode>(outcome.lane_colors(lane)));
  }
  return total;
}

SequenceKpis sequence_kpis(std::span<const ColorCode> colors, std::span<const std::int64_t> blends,
                           const PaintShopConfig& paintshop) {
  if (!blends.empty() && blends.size() != colors.size()) {
    throw Error(Errc::InvalidArgument, "color and blend sequences differ in length");
  }
  SequenceKpis k;
  k.cars = colors.size();
  k.batches = batch_stats(colors);
  k.changeovers = color_changeovers(colors);
  if (!colors.empty()) k.cpc = cpc(colors);
  if (colors.size() >= kDifferentiationWindow) k.differentiation = color_differentiation(colors, kDifferentiationWindow);
  const auto paint = simulate_paintshop(colors, paintshop);
  k.aabs = paint.aabs;
  k.paint_batches = paint.batch_count;
  k.paint_changeovers = paint_changeovers(paint);
  if (!blends.empty()) k.sortedness = summarize_sortedness(blends);
  return k;
}

}  // namespace reseq
