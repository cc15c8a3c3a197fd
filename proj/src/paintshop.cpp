#include "reseq/paintshop.hpp"

#include <deque>
#include <random>

#include "reseq/error.hpp"

namespace reseq {

void PaintShopConfig::validate() const {
  if (primer_lanes == 0 || primer_per_lane_capacity == 0) {
    throw Error(Errc::InvalidArgument, "primer buffer needs at least one lane and one slot per lane");
  }
  if (paint_lane_count == 0) throw Error(Errc::InvalidArgument, "paint_lane_count must be at least 1");
  if (!(repaint_rate >= 0.0 && repaint_rate < 1.0)) throw Error(Errc::InvalidArgument, "repaint_rate must lie in [0, 1)");
  if (fill_target && *fill_target == 0) throw Error(Errc::InvalidArgument, "fill_target must be positive");
}

std::vector<ColorCode> PaintOutcome::lane_colors(std::size_t lane) const {
  std::vector<ColorCode> out;
  out.reserve(lanes.at(lane).size());
  for (const auto& item : lanes[lane]) out.push_back(item.color);
  return out;
}

namespace {

struct Body {
  PaintItem item;
  bool repainted = false;
};

class PrimerBuffer {
 public:
  PrimerBuffer(std::size_t lanes, std::size_t capacity) : lanes_(lanes), capacity_(capacity) {}

  std::size_t occupancy() const { return occupancy_; }
  bool empty() const { return occupancy_ == 0; }

  // Tail-color match first, otherwise the emptiest lane.
  void push(const Body& body) {
    std::size_t target = lanes_.size();
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      const auto& lane = lanes_[i];
      if (!lane.empty() && lane.size() < capacity_ && lane.back().item.color == body.item.color) {
        target = i;
        break;
      }
    }
    if (target == lanes_.size()) {
      std::size_t best_free = 0;
      for (std::size_t i = 0; i < lanes_.size(); ++i) {
        const std::size_t free = capacity_ - lanes_[i].size();
        if (free > best_free) {
          best_free = free;
          target = i;
        }
      }
    }
    lanes_.at(target).push_back(body);
    ++occupancy_;
  }

  std::size_t prefix(std::size_t lane) const {
    const auto& q = lanes_[lane];
    std::size_t n = 0;
    while (n < q.size() && q[n].item.color == q.front().item.color) ++n;
    return n;
  }

  // Lane the paint lane with color `current` would pull from, if any. Heads whose
  // color is being painted on another paint lane are left to that lane.
  std::optional<std::size_t> choose(std::optional<ColorCode> current, std::span<const std::optional<ColorCode>> busy) const {
    if (current) {
      for (std::size_t i = 0; i < lanes_.size(); ++i) {
        if (!lanes_[i].empty() && lanes_[i].front().item.color == *current) return i;
      }
    }
    std::optional<std::size_t> best;
    std::size_t best_prefix = 0;
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      if (lanes_[i].empty()) continue;
      const auto color = lanes_[i].front().item.color;
      bool taken = false;
      for (const auto& b : busy) taken = taken || (b && *b == color);
      if (taken) continue;
      const auto p = prefix(i);
      if (p > best_prefix) {
        best_prefix = p;
        best = i;
      }
    }
    return best;
  }

  Body pop(std::size_t lane) {
    Body b = lanes_[lane].front();
    lanes_[lane].pop_front();
    --occupancy_;
    return b;
  }

 private:
  std::vector<std::deque<Body>> lanes_;
  std::size_t capacity_;
  std::size_t occupancy_ = 0;
};

}  // namespace

PaintOutcome simulate_paintshop(std::span<const PaintItem> input, const PaintShopConfig& config) {
  config.validate();
  const std::size_t capacity = config.primer_lanes * config.primer_per_lane_capacity;
  const std::size_t target = std::min(capacity, config.fill_target.value_or(capacity));

  PrimerBuffer primer(config.primer_lanes, config.primer_per_lane_capacity);
  std::deque<Body> repaint_queue;
  std::size_t next_input = 0;
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PaintOutcome out;
  out.lanes.resize(config.paint_lane_count);
  std::vector<std::optional<ColorCode>> current(config.paint_lane_count);
  std::size_t turn = 0;

  auto has_input = [&] { return !repaint_queue.empty() || next_input < input.size(); };
  auto take_input = [&] {
    if (!repaint_queue.empty()) {
      Body b = repaint_queue.front();
      repaint_queue.pop_front();
      return b;
    }
    return Body{input[next_input++], false};
  };

  auto pull = [&] {
    const std::size_t lanes = config.paint_lane_count;
    for (std::size_t attempt = 0; attempt < lanes; ++attempt) {
      const std::size_t lane = (turn + attempt) % lanes;
      std::vector<std::optional<ColorCode>> busy;
      for (std::size_t o = 0; o < lanes; ++o) {
        if (o != lane) busy.push_back(current[o]);
      }
      auto from = primer.choose(current[lane], busy);
      if (!from) continue;
      Body body = primer.pop(*from);
      out.lanes[lane].push_back(body.item);
      current[lane] = body.item.color;
      ++out.painted;
      if (!body.repainted && config.repaint_rate > 0.0 && unit(rng) < config.repaint_rate) {
        repaint_queue.push_back(Body{body.item, true});
        ++out.repaints;
      }
      turn = (lane + 1) % lanes;
      return;
    }
    throw Error(Errc::InvalidArgument, "paint shop stalled with a non-empty primer buffer");
  };

  while (has_input() || !primer.empty()) {
    if (has_input() && primer.occupancy() < target) {
      primer.push(take_input());
    } else {
      pull();
    }
  }

  for (std::size_t lane = 0; lane < out.lanes.size(); ++lane) {
    out.batch_count += batch_stats(std::span<const ColorCode>(out.lane_colors(lane))).batch_count;
  }
  if (out.batch_count > 0) out.aabs = Rational(static_cast<std::int64_t>(out.painted), static_cast<std::int64_t>(out.batch_count));
  return out;
}

PaintOutcome simulate_paintshop(std::span<const ColorCode> colors, const PaintShopConfig& config) {
  std::vector<PaintItem> items;
  items.reserve(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) items.push_back({colors[i], static_cast<std::int64_t>(i)});
  return simulate_paintshop(std::span<const PaintItem>(items), config);
}

Rational assessed_abs(std::span<const ColorCode> colors, const PaintShopConfig& config) {
  return simulate_paintshop(colors, config).aabs;
}

}  // namespace reseq
