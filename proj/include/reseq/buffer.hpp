#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reseq/error.hpp"

namespace reseq {

struct BufferGeometry {
  std::size_t lanes = 13;
  std::size_t per_lane_capacity = 12;
  std::size_t total_capacity = 148;

  bool operator==(const BufferGeometry&) const = default;
};

/// Per-lane capacity used when a scenario only states the lane count and the total.
constexpr std::size_t default_per_lane_capacity(std::size_t lanes, std::size_t total) {
  return lanes == 0 ? 0 : (total + lanes - 1) / lanes;
}

// A bank of parallel FIFO lanes. Both the per-lane and the total capacity are
// enforced. Locked lanes refuse enqueues; lanes with a blocked head refuse dequeues.
// Value type: copying yields an independent snapshot.
template <class Item>
class BasicLaneBuffer {
 public:
  explicit BasicLaneBuffer(BufferGeometry g) : geometry_(g) {
    if (g.lanes == 0 || g.per_lane_capacity == 0 || g.total_capacity == 0) {
      throw Error(Errc::InvalidArgument, "buffer geometry requires positive lane count and capacities");
    }
    lanes_.resize(g.lanes);
  }

  BasicLaneBuffer(std::size_t lanes, std::size_t per_lane_capacity, std::size_t total_capacity)
      : BasicLaneBuffer(BufferGeometry{lanes, per_lane_capacity, total_capacity}) {}

  const BufferGeometry& geometry() const { return geometry_; }
  std::size_t lane_count() const { return lanes_.size(); }
  std::size_t occupancy() const { return occupancy_; }
  bool empty() const { return occupancy_ == 0; }
  const std::deque<Item>& lane(std::size_t i) const { return lanes_.at(i); }

  bool is_locked(std::size_t lane) const { return locked_.count(check(lane)) != 0; }
  bool is_head_blocked(std::size_t lane) const { return blocked_.count(check(lane)) != 0; }

  void set_locked(std::size_t lane, bool locked) { toggle(locked_, check(lane), locked); }
  void set_head_blocked(std::size_t lane, bool blocked) { toggle(blocked_, check(lane), blocked); }

  bool is_full(std::size_t lane) const { return lanes_[check(lane)].size() >= geometry_.per_lane_capacity; }

  /// Lane can accept a car right now.
  bool is_available(std::size_t lane) const {
    return !is_locked(lane) && !is_full(lane) && occupancy_ < geometry_.total_capacity;
  }

  std::vector<std::size_t> available_lanes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      if (is_available(i)) out.push_back(i);
    }
    return out;
  }

  void enqueue(Item item, std::size_t lane) {
    check(lane);
    const std::string where = " (lane " + std::to_string(lane) + ")";
    if (is_locked(lane)) throw Error(Errc::LaneLocked, "lane is locked" + where);
    if (is_full(lane)) throw Error(Errc::LaneFull, "lane is full" + where);
    if (occupancy_ >= geometry_.total_capacity) throw Error(Errc::BufferFull, "buffer is full" + where);
    lanes_[lane].push_back(std::move(item));
    ++occupancy_;
  }

  Item dequeue(std::size_t lane) {
    check(lane);
    if (lanes_[lane].empty()) throw Error(Errc::LaneEmpty, "lane " + std::to_string(lane) + " is empty");
    if (is_head_blocked(lane)) {
      throw Error(Errc::HeadBlocked, "head of lane " + std::to_string(lane) + " is blocked");
    }
    Item head = std::move(lanes_[lane].front());
    lanes_[lane].pop_front();
    --occupancy_;
    return head;
  }

  /// (lane, head) for every non-empty lane whose head is not blocked, ascending by lane.
  std::vector<std::pair<std::size_t, Item>> heads() const {
    std::vector<std::pair<std::size_t, Item>> out;
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      if (!lanes_[i].empty() && !blocked_.count(i)) out.emplace_back(i, lanes_[i].front());
    }
    return out;
  }

  BasicLaneBuffer snapshot() const { return *this; }

  /// Lane holding `item`, if any.
  std::optional<std::size_t> find(const Item& item) const {
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      if (std::find(lanes_[i].begin(), lanes_[i].end(), item) != lanes_[i].end()) return i;
    }
    return std::nullopt;
  }

 private:
  std::size_t check(std::size_t lane) const {
    if (lane >= lanes_.size()) {
      throw Error(Errc::UnknownLane, "lane " + std::to_string(lane) + " does not exist");
    }
    return lane;
  }

  static void toggle(std::set<std::size_t>& s, std::size_t lane, bool on) {
    if (on) {
      s.insert(lane);
    } else {
      s.erase(lane);
    }
  }

  BufferGeometry geometry_;
  std::vector<std::deque<Item>> lanes_;
  std::set<std::size_t> locked_;
  std::set<std::size_t> blocked_;
  std::size_t occupancy_ = 0;
};

using LaneBuffer = BasicLaneBuffer<std::string>;

}  // namespace reseq
