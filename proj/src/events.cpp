#include "reseq/events.hpp"

#include <algorithm>

#include "reseq/error.hpp"
#include "reseq/scenario_io.hpp"

namespace reseq {

namespace {

constexpr std::pair<EventKind, std::string_view> kKinds[] = {
    {EventKind::Enqueue, "enqueue"},       {EventKind::Dequeue, "dequeue"},     {EventKind::Substitute, "substitute"},
    {EventKind::Emission, "emission"},     {EventKind::LaneLock, "lane_lock"}, {EventKind::HeadBlock, "head_block"},
    {EventKind::Status, "status"},
};

EventKind kind_from(std::string_view s) {
  for (const auto& [k, name] : kKinds) {
    if (name == s) return k;
  }
  throw Error(Errc::ParseError, "unknown event kind '" + std::string(s) + "'");
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::ParseError, "unknown key '" + key + "' in " + j.value("kind", std::string("event")) + " event");
    }
  }
}

std::string need_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw Error(Errc::ParseError, std::string("event needs string '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

json event_to_json(const EventRecord& e) {
  json j{{"kind", to_string(e.kind)}, {"timestamp", format_timestamp(e.timestamp)}};
  switch (e.kind) {
    case EventKind::Enqueue:
      j["car_id"] = e.car_id;
      j["body_type"] = e.body_type;
      if (e.lanes) j["available_lanes"] = *e.lanes;
      if (e.order_id) j["order_id"] = *e.order_id;
      break;
    case EventKind::Dequeue:
      if (e.lanes) j["eligible_heads"] = *e.lanes;
      break;
    case EventKind::Substitute:
      j["car_id"] = e.car_id;
      break;
    case EventKind::Emission:
      j["car_id"] = e.car_id;
      j["order_id"] = e.order_id.value_or("");
      break;
    case EventKind::LaneLock:
      j["lane"] = e.lane;
      j["locked"] = e.flag;
      break;
    case EventKind::HeadBlock:
      j["lane"] = e.lane;
      j["blocked"] = e.flag;
      break;
    case EventKind::Status:
      break;
  }
  if (e.response) j["response"] = *e.response;
  return j;
}

EventRecord event_from_json(const json& j, Timestamp fallback_time) {
  if (!j.is_object()) throw Error(Errc::ParseError, "event must be a JSON object");
  EventRecord e;
  e.kind = kind_from(need_string(j, "kind"));
  const bool toggle = e.kind == EventKind::LaneLock || e.kind == EventKind::HeadBlock;
  if (j.contains("timestamp")) {
    e.timestamp = parse_timestamp(need_string(j, "timestamp"));
  } else if (toggle) {
    e.timestamp = fallback_time;
  } else {
    throw Error(Errc::ParseError, "event needs string 'timestamp'");
  }
  try {
    switch (e.kind) {
      case EventKind::Enqueue:
        only_keys(j, {"kind", "timestamp", "car_id", "body_type", "available_lanes", "order_id", "response"});
        e.car_id = need_string(j, "car_id");
        e.body_type = need_string(j, "body_type");
        if (j.contains("available_lanes")) e.lanes = j.at("available_lanes").get<std::vector<std::size_t>>();
        if (j.contains("order_id")) e.order_id = need_string(j, "order_id");
        break;
      case EventKind::Dequeue:
        only_keys(j, {"kind", "timestamp", "eligible_heads", "response"});
        if (j.contains("eligible_heads")) e.lanes = j.at("eligible_heads").get<std::vector<std::size_t>>();
        break;
      case EventKind::Substitute:
        only_keys(j, {"kind", "timestamp", "car_id", "response"});
        e.car_id = need_string(j, "car_id");
        break;
      case EventKind::Emission:
        only_keys(j, {"kind", "timestamp", "car_id", "order_id", "response"});
        e.car_id = need_string(j, "car_id");
        e.order_id = need_string(j, "order_id");
        break;
      case EventKind::LaneLock:
        only_keys(j, {"kind", "timestamp", "lane", "locked", "response"});
        e.lane = j.at("lane").get<std::size_t>();
        e.flag = j.at("locked").get<bool>();
        break;
      case EventKind::HeadBlock:
        only_keys(j, {"kind", "timestamp", "lane", "blocked", "response"});
        e.lane = j.at("lane").get<std::size_t>();
        e.flag = j.at("blocked").get<bool>();
        break;
      case EventKind::Status:
        only_keys(j, {"kind", "timestamp", "response"});
        break;
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, std::string("bad ") + std::string(to_string(e.kind)) + " event: " + ex.what());
  }
  if (j.contains("response")) e.response = j.at("response");
  return e;
}

std::vector<EventRecord> parse_events(std::string_view text, std::string_view source) {
  std::vector<EventRecord> out;
  std::size_t line_no = 0;
  Timestamp last;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    try {
      json j = json::parse(line);
      out.push_back(event_from_json(j, last));
    } catch (const json::parse_error& e) {
      throw Error(Errc::ParseError, where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(Errc::ParseError, where + ": " + e.what());
    }
    if (out.back().timestamp < last) {
      throw Error(Errc::ParseError, where + ": timestamp goes backwards");
    }
    last = out.back().timestamp;
  }
  return out;
}

std::vector<EventRecord> load_events(const std::filesystem::path& path) {
  return parse_events(read_text_file(path), path.string());
}

std::string format_events(const std::vector<EventRecord>& events) {
  std::string out;
  for (const auto& e : events) {
    out += event_to_json(e).dump();
    out += '\n';
  }
  return out;
}

void save_events(const std::vector<EventRecord>& events, const std::filesystem::path& path) {
  write_text_file(path, format_events(events));
}

}  // namespace reseq
