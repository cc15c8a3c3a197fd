#include <unistd.h>

#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "reseq/replay.hpp"
#include "reseq/service.hpp"
#include "reseq/synthetic.hpp"

using namespace reseq;
namespace fs = std::filesystem;

namespace {

Scenario small_scenario() {
  SyntheticConfig cfg;
  cfg.n_cars = 40;
  cfg.n_colors = 5;
  cfg.warmup_occupancy = 10;
  cfg.buffer = BufferGeometry{3, 6, 15};
  auto s = generate_synthetic(cfg).scenario;
  s.config.scenario_id = "svc";
  return s;
}

std::string enqueue_body(const std::string& car, const std::string& body_type, const std::string& ts,
                         const std::string& extra = "") {
  return "{\"car_id\": \"" + car + "\", \"body_type\": \"" + body_type + "\", \"timestamp\": \"" + ts + "\"" + extra + "}";
}

std::string stamp(int minute) {
  return format_timestamp(parse_timestamp("2023-03-01T06:00:00Z") + Duration{minute * 60});
}

}  // namespace

TEST_CASE("requests before load answer 503") {
  Service svc;
  CHECK_FALSE(svc.ready());
  CHECK(svc.handle("GET", "/status", "").status == 503);
  CHECK(svc.handle("POST", "/dequeue", "{}").status == 503);
}

TEST_CASE("fresh status reflects an empty buffer") {
  const auto s = small_scenario();
  Service svc;
  svc.load(s);
  const auto r = svc.handle("GET", "/status", "");
  CHECK(r.status == 200);
  CHECK(r.body.at("occupancy") == 0);
  CHECK(r.body.at("pool_size") == s.catalog.orders.size());
  CHECK(r.body.at("scenario_id") == "svc");
  CHECK(r.body.at("lanes").size() == 3);
}

TEST_CASE("enqueue honours a single available lane") {
  Service svc;
  svc.load(small_scenario());
  const auto r = svc.handle("POST", "/enqueue", enqueue_body("c1", "limousine", stamp(0), ", \"available_lanes\": [2]"));
  CHECK(r.status == 200);
  CHECK(r.body.at("lane") == 2);
  CHECK(svc.handle("GET", "/status", "").body.at("lanes")[2][0] == "c1");
}

TEST_CASE("error statuses") {
  Service svc;
  svc.load(small_scenario());
  auto r = svc.handle("POST", "/dequeue", "{\"timestamp\": \"" + stamp(0) + "\"}");
  CHECK(r.status == 409);
  CHECK(r.body.at("error") == "NoEligibleHead");

  CHECK(svc.handle("POST", "/enqueue", "{not json").status == 400);
  CHECK(svc.handle("POST", "/enqueue", "{\"car_id\": \"x\"}").status == 400);
  CHECK(svc.handle("POST", "/enqueue", enqueue_body("x", "limousine", stamp(1), ", \"colour\": 1")).status == 400);
  CHECK(svc.handle("POST", "/teleport", "{}").status == 404);
  CHECK(svc.handle("DELETE", "/enqueue", "{}").status == 405);
  CHECK(svc.handle("POST", "/event", "{\"kind\": \"lane_lock\", \"lane\": 9, \"locked\": true}").status == 400);

  CHECK(svc.handle("POST", "/enqueue", enqueue_body("a", "limousine", stamp(5))).status == 200);
  r = svc.handle("POST", "/enqueue", enqueue_body("b", "limousine", stamp(4)));
  CHECK(r.status == 409);
  r = svc.handle("POST", "/enqueue", enqueue_body("a", "limousine", stamp(6)));
  CHECK(r.status == 409);
  CHECK(r.body.at("error") == "InconsistentEvent");
}

TEST_CASE("the decision log replays to the same responses") {
  const auto s = small_scenario();
  const auto log = fs::temp_directory_path() / ("reseq_service_" + std::to_string(::getpid()) + ".jsonl");
  fs::remove(log);
  Service svc;
  svc.load(s, log);

  int minute = 0, car = 0;
  const char* bodies[] = {"limousine", "wagon"};
  for (int round = 0; round < 30; ++round) {
    if (round % 3 != 2) {
      const auto id = "car" + std::to_string(car);
      CHECK(svc.handle("POST", "/enqueue", enqueue_body(id, bodies[car % 2], stamp(minute++))).status == 200);
      ++car;
    } else {
      CHECK(svc.handle("POST", "/dequeue", "{\"timestamp\": \"" + stamp(minute++) + "\"}").status == 200);
    }
    if (round == 10) {
      CHECK(svc.handle("POST", "/event", "{\"kind\": \"lane_lock\", \"lane\": 0, \"locked\": true}").status == 200);
    }
    if (round == 20) {
      CHECK(svc.handle("POST", "/event", "{\"kind\": \"lane_lock\", \"lane\": 0, \"locked\": false}").status == 200);
    }
  }
  svc.handle("GET", "/status", "");

  const auto decisions = svc.decisions();
  CHECK(load_events(log) == decisions);
  const auto again = replay(decisions, std::make_shared<const CatalogIndex>(s.catalog), s.config.controller);
  CHECK(format_events(again.decisions) == format_events(decisions));
  CHECK(again.skipped == 0);
  fs::remove(log);
}

TEST_CASE("HTTP round trip") {
  Service svc;
  svc.load(small_scenario());
  httplib::Server server;
  mount(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/enqueue", enqueue_body("h1", "wagon", stamp(0)), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  res = client.Post("/dequeue", "{\"timestamp\": \"" + stamp(1) + "\"}", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body).at("car_id") == "h1");
  res = client.Get("/status");
  REQUIRE(res);
  CHECK(json::parse(res->body).at("emitted") == 1);

  server.stop();
  worker.join();
}
