#include "reseq/controller.hpp"

#include <algorithm>
#include <cmath>

#include "reseq/error.hpp"

namespace reseq {

int touch_recent(std::vector<ColorCode>& recent, ColorCode color) {
  auto it = std::find(recent.begin(), recent.end(), color);
  int previous = -1;
  if (it != recent.end()) {
    previous = static_cast<int>(it - recent.begin());
    std::rotate(recent.begin(), it, it + 1);
  } else {
    recent.insert(recent.begin(), color);
  }
  return previous;
}

void untouch_recent(std::vector<ColorCode>& recent, ColorCode color, int previous) {
  if (previous < 0) {
    recent.erase(recent.begin());
  } else {
    std::rotate(recent.begin(), recent.begin() + 1, recent.begin() + previous + 1);
  }
  (void)color;
}

Controller::Controller(std::shared_ptr<const CatalogIndex> index, ControllerConfig config)
    : index_(std::move(index)),
      config_(config),
      buffer_(config.buffer),
      pool_(*index_),
      history_(index_->constraints(), config.rate_window) {}

std::vector<std::vector<std::string>> Controller::lanes() const {
  std::vector<std::vector<std::string>> out(buffer_.lane_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto h : buffer_.lane(i)) out[i].push_back(cars_[h].body.car_id);
  }
  return out;
}

std::optional<CarBody> Controller::car(std::string_view car_id) const {
  auto it = in_buffer_.find(std::string(car_id));
  if (it == in_buffer_.end()) return std::nullopt;
  return cars_[it->second].body;
}

Duration Controller::departure_interval() const {
  if (departures_.size() < 2) return config_.default_departure_interval;
  const double span = static_cast<double>((departures_.back() - departures_.front()).seconds);
  const auto mean = static_cast<std::int64_t>(std::llround(span / static_cast<double>(departures_.size() - 1)));
  return Duration{std::max<std::int64_t>(mean, 1)};
}

std::optional<Controller::Pick> Controller::pick(const OrderPool& pool, const EmissionHistory& history,
                                                 std::span<const ColorCode> recent, std::span<const Head> heads,
                                                 Timestamp at, std::vector<char>& flags) const {
  history.violation_flags(at, flags);

  // Winners depend on the body type only, so each type is evaluated once.
  thread_local std::vector<std::pair<BodyTypeCode, Candidate>> winners;
  winners.clear();
  for (const auto& head : heads) {
    bool seen = std::any_of(winners.begin(), winners.end(), [&](const auto& w) { return w.first == head.body_type; });
    if (seen) continue;
    if (auto best = pool.best(head.body_type, flags, config_.strategy, recent)) {
      winners.emplace_back(head.body_type, *best);
    }
  }
  if (winners.empty()) return std::nullopt;

  std::size_t chosen = 0;
  if (winners.size() > 1) {
    thread_local std::vector<Candidate> candidates;
    thread_local std::vector<std::size_t> popularity;
    candidates.clear();
    popularity.assign(index_->color_count(), 0);
    for (const auto& [bt, cand] : winners) {
      candidates.push_back(cand);
      auto counts = pool.color_counts(bt);
      for (std::size_t c = 0; c < counts.size(); ++c) popularity[c] += counts[c];
    }
    auto best = select_best(candidates, config_.strategy, recent, popularity);
    while (winners[chosen].second.order != best->order) ++chosen;
  }
  const auto& [body_type, order] = winners[chosen];

  const Head* oldest = nullptr;
  for (const auto& head : heads) {
    if (head.body_type != body_type) continue;
    if (!oldest || head.entered_at < oldest->entered_at) oldest = &head;
  }
  return Pick{oldest->lane, oldest->car, order};
}

Candidate Controller::assign_order(const CarBody& car, Timestamp now) const {
  std::vector<char> flags;
  history_.violation_flags(now, flags);
  auto best = pool_.best(index_->find_body_type(car.body_type), flags, config_.strategy, recent_);
  if (!best) throw Error(Errc::NoCompatibleOrder, "no order in the pool fits body type '" + car.body_type + "'");
  return *best;
}

Assignment Controller::choose_dequeue(Timestamp now, const std::optional<std::vector<std::size_t>>& eligible) const {
  std::vector<Head> heads;
  for (std::size_t lane = 0; lane < buffer_.lane_count(); ++lane) {
    if (buffer_.lane(lane).empty() || buffer_.is_head_blocked(lane)) continue;
    if (eligible && std::find(eligible->begin(), eligible->end(), lane) == eligible->end()) continue;
    const auto h = buffer_.lane(lane).front();
    heads.push_back({lane, h, cars_[h].body_type, cars_[h].body.entered_at});
  }
  if (heads.empty()) throw Error(Errc::NoEligibleHead, "no lane head is eligible to leave");
  std::vector<char> flags;
  auto p = pick(pool_, history_, recent_, heads, now, flags);
  if (!p) throw Error(Errc::NoCompatibleOrder, "no eligible head fits any order in the pool");
  return Assignment{p->lane, cars_[p->car].body.car_id, p->order, version_};
}

Controller::CarHandle Controller::locate_head(std::string_view car_id, std::size_t& lane) const {
  auto it = in_buffer_.find(std::string(car_id));
  if (it == in_buffer_.end()) {
    throw Error(Errc::InconsistentEvent, "car " + std::string(car_id) + " is not in the buffer");
  }
  for (lane = 0; lane < buffer_.lane_count(); ++lane) {
    if (!buffer_.lane(lane).empty() && buffer_.lane(lane).front() == it->second) return it->second;
  }
  throw Error(Errc::InconsistentEvent, "car " + std::string(car_id) + " is not at the head of its lane");
}

Assignment Controller::choose_substitution(std::string_view car_id, Timestamp now) const {
  std::size_t lane = 0;
  const auto h = locate_head(car_id, lane);
  const Head head{lane, h, cars_[h].body_type, cars_[h].body.entered_at};
  std::vector<char> flags;
  auto p = pick(pool_, history_, recent_, std::span<const Head>(&head, 1), now, flags);
  if (!p) {
    throw Error(Errc::NoCompatibleOrder, "no order in the pool fits body type '" + cars_[h].body.body_type + "'");
  }
  return Assignment{lane, std::string(car_id), p->order, version_};
}

LaneForecast Controller::forecast(std::size_t lane, const Head& entering, Timestamp now, Duration interval,
                                  OrderPool& pool, EmissionHistory& history, std::vector<ColorCode>& recent) const {
  const std::size_t lanes = buffer_.lane_count();
  std::vector<std::size_t> cursor(lanes, 0);
  std::size_t remaining = buffer_.occupancy() + 1;

  struct Undo {
    OrderHandle order;
    ColorCode color;
    int recent_pos;
  };
  std::vector<Undo> undo;
  undo.reserve(remaining);
  std::vector<ColorCode> colors;
  std::vector<std::int64_t> blends;
  std::vector<Head> heads;
  std::vector<char> flags;
  LaneForecast out;
  out.lane = lane;

  for (std::int64_t step = 1; remaining > 0; ++step) {
    heads.clear();
    for (std::size_t l = 0; l < lanes; ++l) {
      const auto& real = buffer_.lane(l);
      if (cursor[l] < real.size()) {
        const auto h = real[cursor[l]];
        heads.push_back({l, h, cars_[h].body_type, cars_[h].body.entered_at});
      } else if (l == lane && cursor[l] == real.size()) {
        heads.push_back({l, entering.car, entering.body_type, entering.entered_at});
      }
    }
    const Timestamp at = now + Duration{interval.seconds * step};
    auto p = pick(pool, history, recent, heads, at, flags);
    if (!p) break;

    out.violations += p->order.violation;
    colors.push_back(p->order.color);
    blends.push_back(p->order.blend);
    pool.consume(p->order.order);
    history.push(EmissionRecord{p->order.order, p->order.color, p->order.blend,
                                index_->signature_of(p->order.order), at});
    undo.push_back({p->order.order, p->order.color, touch_recent(recent, p->order.color)});
    ++cursor[p->lane];
    --remaining;
  }

  for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
    untouch_recent(recent, it->color, it->recent_pos);
    history.pop();
    pool.restore(it->order);
  }

  out.length = colors.size();
  if (!colors.empty()) {
    out.lds = lds_fast(blends);
    out.abs = batch_stats(std::span<const ColorCode>(colors)).abs;
    out.ratio = Rational(out.lds) / out.abs;
  }
  return out;
}

EnqueueDecision Controller::choose_enqueue_lane(const CarBody& car, Timestamp now,
                                                const std::optional<std::vector<std::size_t>>& available) const {
  std::vector<std::size_t> lanes;
  for (auto lane : buffer_.available_lanes()) {
    if (!available || std::find(available->begin(), available->end(), lane) != available->end()) lanes.push_back(lane);
  }
  if (lanes.empty()) throw Error(Errc::NoAvailableLane, "no unlocked lane with free space for " + car.car_id);

  EnqueueDecision decision;
  decision.state_version = version_;
  if (lanes.size() == 1) {
    decision.lane = lanes.front();
    return decision;
  }

  // One snapshot per decision; each lane's simulation rolls its changes back.
  OrderPool pool = pool_;
  EmissionHistory history = history_;
  std::vector<ColorCode> recent = recent_;
  const Duration interval = departure_interval();
  const Head entering{0, static_cast<CarHandle>(cars_.size()), index_->find_body_type(car.body_type), now};

  for (auto lane : lanes) {
    decision.forecasts.push_back(forecast(lane, entering, now, interval, pool, history, recent));
  }
  const LaneForecast* best = &decision.forecasts.front();
  for (const auto& f : decision.forecasts) {
    if (f.violations < best->violations || (f.violations == best->violations && f.ratio < best->ratio)) best = &f;
  }
  decision.lane = best->lane;
  return decision;
}

void Controller::enqueue(CarBody car, std::size_t lane) {
  if (in_buffer_.count(car.car_id)) {
    throw Error(Errc::InconsistentEvent, "car " + car.car_id + " is already in the buffer");
  }
  const auto handle = static_cast<CarHandle>(cars_.size());
  buffer_.enqueue(handle, lane);
  const auto bt = index_->find_body_type(car.body_type);
  in_buffer_.emplace(car.car_id, handle);
  cars_.push_back(CarSlot{std::move(car), bt});
  ++version_;
}

Emission Controller::emit(CarHandle car, std::size_t lane, OrderHandle order, Timestamp at) {
  const auto sig = index_->signature_of(order);
  Emission out{cars_[car].body.car_id, lane, order, history_.violation(sig, at), at};
  pool_.consume(order);
  history_.push(EmissionRecord{order, index_->color_of(order), index_->order(order).blend_number, sig, at});
  history_.prune();
  touch_recent(recent_, index_->color_of(order));
  departures_.push_back(at);
  while (departures_.size() > config_.rate_window) departures_.pop_front();
  in_buffer_.erase(cars_[car].body.car_id);
  ++version_;
  return out;
}

Emission Controller::commit_emission(const Assignment& decision, Timestamp at) {
  if (decision.state_version != version_) {
    throw Error(Errc::StaleDecision, "decision for " + decision.car_id + " was computed on state " +
                                         std::to_string(decision.state_version) + ", current is " +
                                         std::to_string(version_));
  }
  const auto& lane = buffer_.lane(decision.lane);
  if (lane.empty() || cars_[lane.front()].body.car_id != decision.car_id) {
    throw Error(Errc::StaleDecision, "car " + decision.car_id + " is no longer at the head of its lane");
  }
  const auto h = buffer_.dequeue(decision.lane);
  return emit(h, decision.lane, decision.order.order, at);
}

Emission Controller::force_emission(std::string_view car_id, std::string_view order_id, Timestamp at) {
  std::size_t lane = 0;
  const auto h = locate_head(car_id, lane);
  const auto order = index_->find_order(order_id);
  if (!order) throw Error(Errc::InconsistentEvent, "unknown order " + std::string(order_id));
  if (!pool_.contains(*order)) throw Error(Errc::InconsistentEvent, "order " + std::string(order_id) + " already consumed");
  if (index_->body_type_of(*order) != cars_[h].body_type) {
    throw Error(Errc::InconsistentEvent, "order " + std::string(order_id) + " does not fit car " + std::string(car_id));
  }
  const bool blocked = buffer_.is_head_blocked(lane);
  if (blocked) buffer_.set_head_blocked(lane, false);
  buffer_.dequeue(lane);
  if (blocked) buffer_.set_head_blocked(lane, true);
  return emit(h, lane, *order, at);
}

void Controller::set_lane_locked(std::size_t lane, bool locked) {
  buffer_.set_locked(lane, locked);
  ++version_;
}

void Controller::set_head_blocked(std::size_t lane, bool blocked) {
  buffer_.set_head_blocked(lane, blocked);
  ++version_;
}

}  // namespace reseq
