#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reseq/time.hpp"

namespace reseq {

enum class EventKind { Enqueue, Dequeue, Substitute, Emission, LaneLock, HeadBlock, Status };

std::string_view to_string(EventKind kind);

// One line of an event log. Which fields are meaningful depends on `kind`:
//   Enqueue     car_id, body_type, lanes (available lanes), order_id (order the car was built for)
//   Dequeue     lanes (eligible heads)
//   Substitute  car_id
//   Emission    car_id, order_id (observed outside the controller)
//   LaneLock    lane, flag (locked)
//   HeadBlock   lane, flag (blocked)
// A decision log is the same format with `response` filled in.
struct EventRecord {
  EventKind kind = EventKind::Status;
  Timestamp timestamp;
  std::string car_id;
  std::string body_type;
  std::optional<std::string> order_id;
  std::optional<std::vector<std::size_t>> lanes;
  std::size_t lane = 0;
  bool flag = false;
  std::optional<nlohmann::json> response;

  bool operator==(const EventRecord&) const = default;
};

nlohmann::json event_to_json(const EventRecord& e);
/// Throws Error(ParseError). `fallback_time` is used by lane toggles that omit a timestamp.
EventRecord event_from_json(const nlohmann::json& j, Timestamp fallback_time = {});

/// JSON Lines; blank lines are skipped. Errors name the line.
std::vector<EventRecord> parse_events(std::string_view text, std::string_view source = "events");
std::vector<EventRecord> load_events(const std::filesystem::path& path);
std::string format_events(const std::vector<EventRecord>& events);
void save_events(const std::vector<EventRecord>& events, const std::filesystem::path& path);

}  // namespace reseq
