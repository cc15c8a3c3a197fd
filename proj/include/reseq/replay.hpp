#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "reseq/controller.hpp"
#include "reseq/error.hpp"
#include "reseq/events.hpp"

namespace reseq {

struct EnteringCar {
  std::string car_id;
  std::optional<OrderHandle> planned;  // order the car was built for, when the log names it
  Timestamp entered_at;
  std::size_t lane = 0;
};

struct LeavingCar {
  std::string car_id;
  OrderHandle order = 0;
  Timestamp left_at;
  std::size_t lane = 0;
  Weight violation{0};
};

struct EventOutcome {
  nlohmann::json response;
  std::optional<Errc> error;
};

// Feeds events to a controller one at a time, committing every decision it asks for.
// Shared by offline replay and the HTTP service so both produce identical logs.
class EventProcessor {
 public:
  EventProcessor(std::shared_ptr<const CatalogIndex> index, ControllerConfig config);

  /// Controller errors are returned in the outcome, leaving the state untouched.
  EventOutcome apply(const EventRecord& event);

  const Controller& controller() const { return controller_; }
  const std::vector<EnteringCar>& entering() const { return entering_; }
  const std::vector<LeavingCar>& leaving() const { return leaving_; }
  std::size_t skipped() const { return skipped_; }
  nlohmann::json status() const;

 private:
  nlohmann::json handle(const EventRecord& event);
  nlohmann::json emission_json(const Emission& e, std::uint64_t version);

  Controller controller_;
  std::vector<EnteringCar> entering_;
  std::vector<LeavingCar> leaving_;
  std::size_t skipped_ = 0;
};

struct ReplayResult {
  std::vector<EnteringCar> entering;
  std::vector<LeavingCar> leaving;
  std::vector<EventRecord> decisions;  // input events with `response` set
  std::size_t skipped = 0;
};

/// Recorded responses in `events` are ignored; every decision is recomputed.
ReplayResult replay(std::span<const EventRecord> events, std::shared_ptr<const CatalogIndex> index,
                    const ControllerConfig& config);

}  // namespace reseq
