#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reseq/replay.hpp"
#include "reseq/scenario_io.hpp"

namespace httplib {
class Server;
}

namespace reseq {

struct HttpResult {
  int status = 200;
  nlohmann::json body;
};

// Request handling behind the HTTP endpoints. Requests are executed one at a time;
// every handled request is appended, with its response, to the decision log before
// the response is returned.
class Service {
 public:
  Service() = default;

  /// Until this is called every request answers 503.
  void load(const Scenario& scenario, std::optional<std::filesystem::path> decision_log = {});
  bool ready() const { return ready_.load(); }

  HttpResult handle(std::string_view method, std::string_view path, std::string_view body);

  std::vector<EventRecord> decisions() const;
  std::string scenario_id() const;

 private:
  HttpResult run(EventRecord event);

  mutable std::mutex mutex_;
  std::atomic<bool> ready_{false};
  std::string scenario_id_;
  std::unique_ptr<EventProcessor> processor_;
  std::vector<EventRecord> log_;
  std::ofstream log_file_;
  Timestamp last_time_;
};

/// Registers the endpoints of `service` on `server`.
void mount(httplib::Server& server, Service& service);

}  // namespace reseq
