#include "reseq/synthetic.hpp"

#include <cstdio>
#include <numeric>
#include <random>

#include "reseq/error.hpp"

namespace reseq {

namespace {

std::string numbered(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
  return buf;
}

std::vector<Constraint> synthetic_constraints(Timestamp start) {
  auto on = [](const char* feature) { return Cnf{Clause{Literal{feature, false}}}; };
  const Timestamp shift_start{floor_div(start.seconds, kSecondsPerDay) * kSecondsPerDay + 6 * 3600};
  return {
      Constraint{"sunroof_1_4", Weight(2), on("SUNROOF"), WindowRule{1, 4}},
      Constraint{"xl_engine_2_5", Weight(1), on("XL_ENGINE"), WindowRule{2, 5}},
      Constraint{"two_tone_40_day", Weight(1), on("TWO_TONE"), TimeRule{40, Duration{kSecondsPerDay}, shift_start}},
  };
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n_colors < 2) throw Error(Errc::InvalidArgument, "synthetic scenarios need at least two colors");
  if (!cfg.color_weights.empty() && cfg.color_weights.size() != cfg.n_colors) {
    throw Error(Errc::InvalidArgument, "color_weights must have one entry per color");
  }
  if (cfg.cars_per_day == 0) throw Error(Errc::InvalidArgument, "cars_per_day must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> weights = cfg.color_weights;
  if (weights.empty()) {
    for (std::size_t r = 1; r <= cfg.n_colors; ++r) weights.push_back(1.0 / static_cast<double>(r));
  }
  std::discrete_distribution<std::size_t> color_dist(weights.begin(), weights.end());
  std::bernoulli_distribution first_body(cfg.first_body_type_share);
  std::bernoulli_distribution sunroof(0.15), xl_engine(0.20), two_tone(0.03);

  SyntheticData out;
  auto& catalog = out.scenario.catalog;
  for (std::size_t c = 0; c < cfg.n_colors; ++c) {
    const auto id = numbered("C", c + 1, 2);
    catalog.colors.push_back(ColorInfo{ColorId{id}, "color " + std::to_string(c + 1)});
  }
  catalog.body_types = {"limousine", "wagon"};
  catalog.constraints = synthetic_constraints(cfg.start);

  const Date first_day = date_of(cfg.start);
  catalog.orders.reserve(cfg.n_cars);
  for (std::size_t i = 0; i < cfg.n_cars; ++i) {
    Order o;
    o.order_id = numbered("O", i + 1, 6);
    o.blend_number = static_cast<std::int64_t>(i + 1);
    o.body_type = first_body(rng) ? "limousine" : "wagon";
    o.color = catalog.colors[color_dist(rng)].id;
    o.planned_date = Date{first_day.days + static_cast<std::int32_t>(i / cfg.cars_per_day)};
    o.due_date = o.planned_date;
    if (sunroof(rng)) o.features.push_back("SUNROOF");
    if (two_tone(rng)) o.features.push_back("TWO_TONE");
    if (xl_engine(rng)) o.features.push_back("XL_ENGINE");
    catalog.orders.push_back(std::move(o));
  }

  // Arrival order: the planned order disturbed by random adjacent swaps.
  std::vector<std::size_t> arrival(cfg.n_cars);
  std::iota(arrival.begin(), arrival.end(), std::size_t{0});
  if (cfg.n_cars > 1) {
    std::uniform_int_distribution<std::size_t> pos(0, cfg.n_cars - 2);
    const auto swaps = static_cast<std::size_t>(cfg.blend_shuffle_strength * static_cast<double>(cfg.n_cars));
    for (std::size_t s = 0; s < swaps; ++s) {
      const auto p = pos(rng);
      std::swap(arrival[p], arrival[p + 1]);
    }
  }

  auto& config = out.scenario.config;
  config.scenario_id = "synthetic-" + std::to_string(cfg.seed);
  config.controller.buffer = cfg.buffer;
  config.day_boundary_seconds = cfg.start.seconds - floor_div(cfg.start.seconds, kSecondsPerDay) * kSecondsPerDay;

  const Duration half{cfg.arrival_interval.seconds / 2};
  Timestamp t = cfg.start;
  std::size_t inside = 0;
  auto depart = [&](Timestamp at) {
    EventRecord e;
    e.kind = EventKind::Dequeue;
    e.timestamp = at;
    out.events.push_back(std::move(e));
    --inside;
  };
  const std::size_t warmup = std::min(cfg.warmup_occupancy, cfg.buffer.total_capacity);
  for (std::size_t j = 0; j < cfg.n_cars; ++j) {
    const auto& order = catalog.orders[arrival[j]];
    EventRecord e;
    e.kind = EventKind::Enqueue;
    e.timestamp = t;
    e.car_id = numbered("B", j + 1, 6);
    e.body_type = order.body_type;
    e.order_id = order.order_id;
    out.events.push_back(std::move(e));
    ++inside;
    if (inside > warmup || inside >= cfg.buffer.total_capacity) depart(t + half);
    t = t + cfg.arrival_interval;
  }
  while (inside > 0) {
    depart(t);
    t = t + cfg.arrival_interval;
  }
  return out;
}

}  // namespace reseq
