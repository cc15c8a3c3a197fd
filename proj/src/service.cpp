#include "reseq/service.hpp"

#include "httplib.h"
#include "reseq/error.hpp"

namespace reseq {

namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::InvalidArgument:
    case Errc::UnknownLane:
      return 400;
    default:
      return 409;
  }
}

HttpResult failure(int status, std::string_view code, std::string_view message) {
  return HttpResult{status, json{{"error", code}, {"message", message}}};
}

}  // namespace

void Service::load(const Scenario& scenario, std::optional<std::filesystem::path> decision_log) {
  auto index = std::make_shared<const CatalogIndex>(scenario.catalog);
  std::lock_guard lock(mutex_);
  processor_ = std::make_unique<EventProcessor>(std::move(index), scenario.config.controller);
  scenario_id_ = scenario.config.scenario_id;
  log_.clear();
  if (decision_log) {
    log_file_ = std::ofstream(*decision_log, std::ios::binary | std::ios::app);
    if (!log_file_) throw Error(Errc::IoError, "cannot open decision log " + decision_log->string());
  }
  ready_ = true;
}

std::vector<EventRecord> Service::decisions() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::string Service::scenario_id() const {
  std::lock_guard lock(mutex_);
  return scenario_id_;
}

HttpResult Service::run(EventRecord event) {
  if (event.timestamp < last_time_) {
    return failure(409, to_string(Errc::InconsistentEvent), "timestamp " + format_timestamp(event.timestamp) +
                                                                 " is earlier than the last request");
  }
  last_time_ = event.timestamp;
  auto outcome = processor_->apply(event);
  event.response = outcome.response;
  if (log_file_.is_open()) {
    log_file_ << event_to_json(event).dump() << '\n';
    log_file_.flush();
  }
  log_.push_back(std::move(event));
  return HttpResult{outcome.error ? status_for(*outcome.error) : 200, outcome.response};
}

HttpResult Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  if (!ready_) return failure(503, "Loading", "scenario is still loading");
  std::lock_guard lock(mutex_);

  if (method == "GET" && path == "/status") {
    EventRecord e;
    e.kind = EventKind::Status;
    e.timestamp = last_time_;
    auto r = run(std::move(e));
    r.body["scenario_id"] = scenario_id_;
    return r;
  }
  if (method != "POST") return failure(405, "MethodNotAllowed", std::string(method) + " " + std::string(path));

  std::string kind;
  if (path == "/enqueue") {
    kind = "enqueue";
  } else if (path == "/dequeue") {
    kind = "dequeue";
  } else if (path == "/substitute") {
    kind = "substitute";
  } else if (path != "/event") {
    return failure(404, "NotFound", std::string(path));
  }

  EventRecord event;
  try {
    json j = json::parse(body.begin(), body.end());
    if (!j.is_object()) throw Error(Errc::ParseError, "request body must be a JSON object");
    if (!kind.empty()) {
      if (j.contains("kind")) throw Error(Errc::ParseError, "unknown key 'kind'");
      j["kind"] = kind;
    } else {
      const auto k = j.value("kind", std::string());
      if (k != "emission" && k != "lane_lock" && k != "head_block") {
        throw Error(Errc::ParseError, "/event accepts emission, lane_lock and head_block events");
      }
    }
    if (j.contains("response")) throw Error(Errc::ParseError, "unknown key 'response'");
    event = event_from_json(j, last_time_);
  } catch (const json::exception& e) {
    return failure(400, to_string(Errc::ParseError), e.what());
  } catch (const Error& e) {
    return failure(400, to_string(e.code()), e.what());
  }
  return run(std::move(event));
}

void mount(httplib::Server& server, Service& service) {
  auto reply = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/status", reply);
  server.Post("/enqueue", reply);
  server.Post("/dequeue", reply);
  server.Post("/substitute", reply);
  server.Post("/event", reply);
}

}  // namespace reseq
