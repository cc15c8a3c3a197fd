#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reseq/buffer.hpp"
#include "reseq/catalog_index.hpp"
#include "reseq/constraint_engine.hpp"
#include "reseq/metrics.hpp"
#include "reseq/order_pool.hpp"
#include "reseq/selection.hpp"

namespace reseq {

struct ControllerConfig {
  BufferGeometry buffer;
  SubstitutionStrategy strategy;
  // Spacing of virtual emissions in the enqueue lookahead when fewer than two real
  // emissions are known; otherwise the mean spacing of the last `rate_window` is used.
  Duration default_departure_interval{60};
  std::size_t rate_window = 20;

  bool operator==(const ControllerConfig&) const = default;
};

/// A car paired with the order it would realize if it left now.
struct Assignment {
  std::size_t lane = 0;
  std::string car_id;
  Candidate order;
  std::uint64_t state_version = 0;
};

/// Outcome of draining the buffer virtually after putting the car into `lane`.
struct LaneForecast {
  std::size_t lane = 0;
  std::size_t length = 0;
  Weight violations{0};
  int lds = 0;
  Rational abs{0};
  Rational ratio{0};  // lds / abs
};

struct EnqueueDecision {
  std::size_t lane = 0;
  std::vector<LaneForecast> forecasts;
  std::uint64_t state_version = 0;
};

struct Emission {
  std::string car_id;
  std::size_t lane = 0;
  OrderHandle order = 0;
  Weight violation{0};
  Timestamp left_at;
};

// Drives the body buffer: which lane an arriving car joins, which head leaves next and
// which order a leaving car realizes. Decisions are pure functions of the state; every
// mutation bumps the state version so that decisions computed on older states are
// rejected at commit time.
class Controller {
 public:
  Controller(std::shared_ptr<const CatalogIndex> index, ControllerConfig config);

  const CatalogIndex& index() const { return *index_; }
  const ControllerConfig& config() const { return config_; }
  std::uint64_t version() const { return version_; }

  std::size_t occupancy() const { return buffer_.occupancy(); }
  std::size_t lane_count() const { return buffer_.lane_count(); }
  std::vector<std::vector<std::string>> lanes() const;
  bool lane_locked(std::size_t lane) const { return buffer_.is_locked(lane); }
  bool head_blocked(std::size_t lane) const { return buffer_.is_head_blocked(lane); }
  std::optional<CarBody> car(std::string_view car_id) const;

  const OrderPool& pool() const { return pool_; }
  std::size_t pool_size() const { return pool_.size(); }
  const EmissionHistory& history() const { return history_; }
  std::span<const ColorCode> recent_colors() const { return recent_; }
  Duration departure_interval() const;

  /// Order the car would receive if it left at `now` (substitution filter chain).
  Candidate assign_order(const CarBody& car, Timestamp now) const;

  /// Best head to leave next; `eligible` restricts the lanes considered.
  Assignment choose_dequeue(Timestamp now, const std::optional<std::vector<std::size_t>>& eligible = {}) const;

  /// Order for a car the plant is taking out of the buffer; it must be a lane head.
  Assignment choose_substitution(std::string_view car_id, Timestamp now) const;

  /// Lane whose virtual drain yields the fewest violations, then the lowest LDS/ABS.
  EnqueueDecision choose_enqueue_lane(const CarBody& car, Timestamp now,
                                      const std::optional<std::vector<std::size_t>>& available = {}) const;

  void enqueue(CarBody car, std::size_t lane);
  Emission commit_emission(const Assignment& decision, Timestamp at);
  /// Applies an emission decided outside the controller.
  Emission force_emission(std::string_view car_id, std::string_view order_id, Timestamp at);
  void set_lane_locked(std::size_t lane, bool locked);
  void set_head_blocked(std::size_t lane, bool blocked);

 private:
  using CarHandle = std::uint32_t;

  struct CarSlot {
    CarBody body;
    BodyTypeCode body_type = kUnknownBodyType;
  };
  struct Head {
    std::size_t lane;
    CarHandle car;
    BodyTypeCode body_type;
    Timestamp entered_at;
  };
  struct Pick {
    std::size_t lane;
    CarHandle car;
    Candidate order;
  };

  std::optional<Pick> pick(const OrderPool& pool, const EmissionHistory& history,
                           std::span<const ColorCode> recent, std::span<const Head> heads, Timestamp at,
                           std::vector<char>& flags) const;
  LaneForecast forecast(std::size_t lane, const Head& entering, Timestamp now, Duration interval,
                        OrderPool& pool, EmissionHistory& history, std::vector<ColorCode>& recent) const;
  CarHandle locate_head(std::string_view car_id, std::size_t& lane) const;
  Emission emit(CarHandle car, std::size_t lane, OrderHandle order, Timestamp at);

  std::shared_ptr<const CatalogIndex> index_;
  ControllerConfig config_;
  BasicLaneBuffer<CarHandle> buffer_;
  std::vector<CarSlot> cars_;
  std::unordered_map<std::string, CarHandle> in_buffer_;
  OrderPool pool_;
  EmissionHistory history_;
  std::vector<ColorCode> recent_;  // distinct colors, most recently emitted first
  std::deque<Timestamp> departures_;
  std::uint64_t version_ = 0;
};

/// Moves `color` to the front of a most-recent-first list. Returns its previous
/// position, or -1 if it was absent.
int touch_recent(std::vector<ColorCode>& recent, ColorCode color);
/// Inverse of touch_recent.
void untouch_recent(std::vector<ColorCode>& recent, ColorCode color, int previous);

}  // namespace reseq
