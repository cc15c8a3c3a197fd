#include "reseq/replay.hpp"

#include "reseq/scenario_io.hpp"

namespace reseq {

EventProcessor::EventProcessor(std::shared_ptr<const CatalogIndex> index, ControllerConfig config)
    : controller_(std::move(index), config) {}

json EventProcessor::status() const {
  return json{{"occupancy", controller_.occupancy()},
              {"pool_size", controller_.pool_size()},
              {"emitted", leaving_.size()},
              {"state_version", controller_.version()},
              {"lanes", controller_.lanes()}};
}

json EventProcessor::emission_json(const Emission& e, std::uint64_t version) {
  const auto& index = controller_.index();
  const auto& order = index.order(e.order);
  leaving_.push_back(LeavingCar{e.car_id, e.order, e.left_at, e.lane, e.violation});
  return json{{"lane", e.lane},
              {"car_id", e.car_id},
              {"order_id", order.order_id},
              {"color", order.color.id},
              {"blend_number", order.blend_number},
              {"violation", weight_to_json(e.violation)},
              {"state_version", version}};
}

json EventProcessor::handle(const EventRecord& ev) {
  switch (ev.kind) {
    case EventKind::Enqueue: {
      CarBody car{ev.car_id, ev.body_type, ev.timestamp, ev.order_id};
      auto decision = controller_.choose_enqueue_lane(car, ev.timestamp, ev.lanes);
      controller_.enqueue(car, decision.lane);
      std::optional<OrderHandle> planned;
      if (ev.order_id) planned = controller_.index().find_order(*ev.order_id);
      entering_.push_back(EnteringCar{ev.car_id, planned, ev.timestamp, decision.lane});
      json r{{"lane", decision.lane}, {"state_version", decision.state_version}};
      for (const auto& f : decision.forecasts) {
        if (f.lane != decision.lane) continue;
        r["violations"] = weight_to_json(f.violations);
        r["lds_abs_ratio"] = weight_to_json(f.ratio);
        r["forecast_length"] = f.length;
      }
      return r;
    }
    case EventKind::Dequeue: {
      auto decision = controller_.choose_dequeue(ev.timestamp, ev.lanes);
      return emission_json(controller_.commit_emission(decision, ev.timestamp), decision.state_version);
    }
    case EventKind::Substitute: {
      auto decision = controller_.choose_substitution(ev.car_id, ev.timestamp);
      return emission_json(controller_.commit_emission(decision, ev.timestamp), decision.state_version);
    }
    case EventKind::Emission: {
      const auto version = controller_.version();
      return emission_json(controller_.force_emission(ev.car_id, ev.order_id.value_or(""), ev.timestamp), version);
    }
    case EventKind::LaneLock:
      controller_.set_lane_locked(ev.lane, ev.flag);
      return json{{"lane", ev.lane}, {"locked", ev.flag}, {"state_version", controller_.version()}};
    case EventKind::HeadBlock:
      controller_.set_head_blocked(ev.lane, ev.flag);
      return json{{"lane", ev.lane}, {"blocked", ev.flag}, {"state_version", controller_.version()}};
    case EventKind::Status:
      return status();
  }
  return json::object();
}

EventOutcome EventProcessor::apply(const EventRecord& event) {
  try {
    return EventOutcome{handle(event), std::nullopt};
  } catch (const Error& e) {
    ++skipped_;
    return EventOutcome{json{{"error", to_string(e.code())}, {"message", e.what()}}, e.code()};
  }
}

ReplayResult replay(std::span<const EventRecord> events, std::shared_ptr<const CatalogIndex> index,
                    const ControllerConfig& config) {
  EventProcessor processor(std::move(index), config);
  ReplayResult out;
  out.decisions.reserve(events.size());
  for (const auto& ev : events) {
    EventRecord logged = ev;
    logged.response = processor.apply(ev).response;
    out.decisions.push_back(std::move(logged));
  }
  out.entering = processor.entering();
  out.leaving = processor.leaving();
  out.skipped = processor.skipped();
  return out;
}

}  // namespace reseq
