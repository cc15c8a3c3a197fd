#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reseq/events.hpp"
#include "reseq/scenario_io.hpp"

namespace reseq {

struct SyntheticConfig {
  std::size_t n_cars = 5000;
  std::size_t n_colors = 20;
  std::vector<double> color_weights;  // empty: proportional to 1/rank
  // Adjacent swaps applied to the build order, as a multiple of n_cars.
  double blend_shuffle_strength = 1.0;
  std::uint64_t seed = 42;
  double first_body_type_share = 0.6;
  std::size_t cars_per_day = 960;
  Duration arrival_interval{90};
  std::size_t warmup_occupancy = 100;
  Timestamp start = parse_timestamp("2023-03-01T06:00:00Z");
  BufferGeometry buffer;
};

struct SyntheticData {
  Scenario scenario;
  std::vector<EventRecord> events;
};

// Orders in planned sequence (blend 1..n) with sampled colors, body types and
// features; bodies arrive in a perturbed planned order. The event stream fills the
// buffer to `warmup_occupancy`, then alternates arrivals with departures and finally
// drains the buffer.
SyntheticData generate_synthetic(const SyntheticConfig& config);

}  // namespace reseq
