#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "reseq/events.hpp"
#include "reseq/kpis.hpp"
#include "reseq/scenario_io.hpp"

namespace reseq {

struct SweepPoint {
  int k = 0;
  std::string strategy;
  SequenceKpis leaving;
  std::size_t skipped = 0;
};

/// Replays the same events once per k with LastKEqual(k) (k = 0 disables the color
/// step) and measures the leaving sequence. Points come back in the order of `ks`.
std::vector<SweepPoint> k_sweep(std::span<const EventRecord> events, std::shared_ptr<const CatalogIndex> index,
                                const ScenarioConfig& config, std::span<const int> ks, bool parallel = true);

/// Parses "a..b" or a comma separated list.
std::vector<int> parse_k_values(std::string_view text);

}  // namespace reseq
