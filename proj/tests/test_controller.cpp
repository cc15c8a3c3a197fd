#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "reseq/controller.hpp"
#include "reseq/error.hpp"
#include "reseq/metrics.hpp"

using namespace reseq;

namespace {

const Timestamp t0 = parse_timestamp("2023-03-01T08:00:00Z");
Timestamp at_min(int minutes) { return t0 + Duration{minutes * 60}; }

Order make_order(std::string id, std::string body, std::string color, std::int64_t blend,
                 std::vector<std::string> features = {}, int due = 0) {
  Order o;
  o.order_id = std::move(id);
  o.body_type = std::move(body);
  o.color = ColorId{std::move(color)};
  o.blend_number = blend;
  o.due_date = Date{19500 + due};
  o.planned_date = o.due_date;
  std::sort(features.begin(), features.end());
  o.features = std::move(features);
  return o;
}

Constraint no_two(const std::string& feature, std::int64_t weight, int m = 1, int n = 2) {
  return Constraint{feature + "_rule", Weight(weight), Cnf{{Literal{feature, false}}}, WindowRule{m, n}};
}

std::shared_ptr<const CatalogIndex> catalog(std::vector<Order> orders, std::vector<Constraint> constraints = {}) {
  ScenarioCatalog cat;
  std::set<std::string> colors;
  for (const auto& o : orders) colors.insert(o.color.id);
  for (const auto& c : colors) cat.colors.push_back(ColorInfo{ColorId{c}, c});
  cat.body_types = {"limousine", "wagon"};
  cat.orders = std::move(orders);
  cat.constraints = std::move(constraints);
  REQUIRE(validate_catalog(cat).empty());
  return std::make_shared<const CatalogIndex>(std::move(cat));
}

ControllerConfig config(SubstitutionStrategy s, std::size_t lanes = 3, std::size_t per_lane = 4,
                        std::size_t total = 10) {
  ControllerConfig c;
  c.buffer = BufferGeometry{lanes, per_lane, total};
  c.strategy = s;
  return c;
}

CarBody car(std::string id, std::string body, Timestamp entered) { return CarBody{std::move(id), std::move(body), entered, {}}; }

std::string order_id(const Controller& c, const Candidate& cand) { return c.index().order(cand.order).order_id; }

std::vector<std::string> recent_ids(const Controller& c) {
  std::vector<std::string> out;
  for (auto code : c.recent_colors()) out.push_back(c.index().color(code).id);
  return out;
}

// Pushes one car through the buffer and realizes `order` with it.
void emit_directly(Controller& c, const std::string& car_id, const std::string& order, Timestamp when) {
  const auto& o = c.index().order(*c.index().find_order(order));
  c.enqueue(car(car_id, o.body_type, when), 0);
  c.force_emission(car_id, order, when);
}

}  // namespace

TEST_CASE("substitution: equal violations and due dates fall through to the smallest blend") {
  auto idx = catalog({make_order("P", "limousine", "W", 100, {"X"}), make_order("A", "limousine", "R", 9),
                      make_order("B", "limousine", "G", 4), make_order("C", "limousine", "B", 7, {"X"})},
                     {no_two("X", 2)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  emit_directly(c, "p", "P", at_min(0));
  const auto best = c.assign_order(car("c1", "limousine", at_min(1)), at_min(1));
  CHECK(order_id(c, best) == "B");
  CHECK(best.blend == 4);
  CHECK(best.violation == Weight(0));
}

TEST_CASE("substitution: a color among the last k beats a smaller blend") {
  std::vector<Order> orders;
  const std::vector<std::string> emitted{"W", "Y", "R", "B", "G", "R", "R"};
  for (std::size_t i = 0; i < emitted.size(); ++i) {
    orders.push_back(make_order("E" + std::to_string(i), "limousine", emitted[i], 101 + static_cast<std::int64_t>(i)));
  }
  orders.push_back(make_order("red", "limousine", "R", 50));
  orders.push_back(make_order("yellow", "limousine", "Y", 10));
  auto idx = catalog(orders);

  for (int k : {0, 3}) {
    Controller c(idx, config(SubstitutionStrategy::last_k_equal(k)));
    for (std::size_t i = 0; i < emitted.size(); ++i) {
      emit_directly(c, "e" + std::to_string(i), "E" + std::to_string(i), at_min(static_cast<int>(i)));
    }
    CHECK(recent_ids(c) == std::vector<std::string>{"R", "G", "B", "Y", "W"});
    const auto best = c.assign_order(car("x", "limousine", at_min(10)), at_min(10));
    // k = 0 skips the color step entirely, so the plain blend order decides.
    CHECK(order_id(c, best) == (k == 0 ? "yellow" : "red"));
  }
}

TEST_CASE("substitution: violation weight dominates due date, color and blend") {
  auto idx = catalog({make_order("P", "limousine", "R", 100, {"X"}), make_order("V", "limousine", "R", 1, {"X"}, 0),
                      make_order("Z", "limousine", "Q", 9, {}, 5)},
                     {no_two("X", 5)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  emit_directly(c, "p", "P", at_min(0));
  const auto best = c.assign_order(car("c", "limousine", at_min(1)), at_min(1));
  CHECK(order_id(c, best) == "Z");
  CHECK(best.violation == Weight(0));
}

TEST_CASE("substitution: no compatible order") {
  auto idx = catalog({make_order("A", "limousine", "R", 1)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  CHECK_THROWS_AS(c.assign_order(car("w", "wagon", t0), t0), Error);
  try {
    c.assign_order(car("w", "wagon", t0), t0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoCompatibleOrder);
  }
}

TEST_CASE("dequeue: the oldest head of the winning body type leaves") {
  auto idx = catalog({make_order("A", "limousine", "R", 1), make_order("B", "limousine", "R", 2)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  c.enqueue(car("Y", "limousine", parse_timestamp("2023-03-01T09:00:00Z")), 1);
  c.enqueue(car("X", "limousine", parse_timestamp("2023-03-01T10:00:00Z")), 0);
  const auto d = c.choose_dequeue(parse_timestamp("2023-03-01T11:00:00Z"));
  CHECK(d.car_id == "Y");
  CHECK(d.lane == 1);
  CHECK(order_id(c, d.order) == "A");
}

TEST_CASE("dequeue: equal entry times go to the lowest lane") {
  auto idx = catalog({make_order("A", "limousine", "R", 1), make_order("B", "limousine", "R", 2)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  c.enqueue(car("b", "limousine", t0), 2);
  c.enqueue(car("a", "limousine", t0), 1);
  CHECK(c.choose_dequeue(at_min(5)).lane == 1);
}

TEST_CASE("dequeue: single head") {
  auto idx = catalog({make_order("A", "wagon", "R", 1)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  c.enqueue(car("only", "wagon", t0), 2);
  const auto d = c.choose_dequeue(at_min(1));
  CHECK(d.car_id == "only");
  CHECK(d.lane == 2);
}

TEST_CASE("dequeue: per-head violations decide between body types") {
  auto idx = catalog({make_order("P", "limousine", "R", 100, {"X"}), make_order("LX", "limousine", "R", 1, {"X"}),
                      make_order("W0", "wagon", "R", 2)},
                     {no_two("X", 3)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  emit_directly(c, "p", "P", at_min(0));
  c.enqueue(car("lim", "limousine", at_min(1)), 0);
  c.enqueue(car("wag", "wagon", at_min(2)), 1);
  const auto d = c.choose_dequeue(at_min(3));
  CHECK(d.car_id == "wag");
  CHECK(d.order.violation == Weight(0));

  SUBCASE("eligible lanes restrict the choice") {
    const auto e = c.choose_dequeue(at_min(3), std::vector<std::size_t>{0});
    CHECK(e.car_id == "lim");
    CHECK(e.order.violation == Weight(3));
  }
  SUBCASE("blocked heads are not candidates") {
    c.set_head_blocked(1, true);
    CHECK(c.choose_dequeue(at_min(3)).car_id == "lim");
  }
}

TEST_CASE("dequeue: errors") {
  auto idx = catalog({make_order("A", "limousine", "R", 1)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code_of([&] { c.choose_dequeue(t0); }) == Errc::NoEligibleHead);
  c.enqueue(car("w", "wagon", t0), 0);
  CHECK(code_of([&] { c.choose_dequeue(t0); }) == Errc::NoCompatibleOrder);
  c.enqueue(car("l", "limousine", t0), 0);
  CHECK(code_of([&] { c.choose_substitution("l", t0); }) == Errc::InconsistentEvent);
  CHECK(code_of([&] { c.choose_substitution("ghost", t0); }) == Errc::InconsistentEvent);
  CHECK(code_of([&] { c.enqueue(car("l", "limousine", t0), 1); }) == Errc::InconsistentEvent);
  CHECK(code_of([&] { c.force_emission("w", "A", t0); }) == Errc::InconsistentEvent);
  CHECK(code_of([&] { c.force_emission("w", "missing", t0); }) == Errc::InconsistentEvent);
}

TEST_CASE("commit rejects decisions made on an older state") {
  auto idx = catalog({make_order("A", "limousine", "R", 1), make_order("B", "limousine", "R", 2)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  c.enqueue(car("a", "limousine", t0), 0);
  const auto d = c.choose_dequeue(at_min(1));
  c.enqueue(car("b", "limousine", at_min(1)), 1);
  try {
    c.commit_emission(d, at_min(2));
    FAIL("stale decision accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::StaleDecision);
  }
  const auto fresh = c.choose_dequeue(at_min(2));
  const auto em = c.commit_emission(fresh, at_min(2));
  CHECK(em.car_id == "a");
  CHECK(c.occupancy() == 1);
  CHECK(c.pool_size() == 1);
  CHECK_FALSE(c.pool().contains(*idx->find_order("A")));
}

TEST_CASE("enqueue: empty buffer and single lane") {
  auto idx = catalog({make_order("A", "limousine", "R", 1)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3)));
  const auto d = c.choose_enqueue_lane(car("a", "limousine", t0), t0);
  CHECK(d.lane == 0);
  CHECK(d.forecasts.size() == 3);

  const auto one = c.choose_enqueue_lane(car("a", "limousine", t0), t0, std::vector<std::size_t>{2});
  CHECK(one.lane == 2);
  CHECK(one.forecasts.empty());

  c.set_lane_locked(1, true);
  const auto skip = c.choose_enqueue_lane(car("a", "limousine", t0), t0, std::vector<std::size_t>{1, 2});
  CHECK(skip.lane == 2);

  c.set_lane_locked(0, true);
  c.set_lane_locked(2, true);
  try {
    c.choose_enqueue_lane(car("a", "limousine", t0), t0);
    FAIL("expected NoAvailableLane");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoAvailableLane);
  }
}

TEST_CASE("enqueue: fewer violations win over the lower lane index") {
  auto idx = catalog({make_order("LX", "limousine", "R", 1, {"X"}, 2), make_order("LY", "limousine", "R", 3, {}, 2),
                      make_order("WX", "wagon", "R", 2, {"X"}, 1)},
                     {no_two("X", 1)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(0), 2));
  c.enqueue(car("A", "limousine", at_min(0)), 0);
  const auto d = c.choose_enqueue_lane(car("N", "wagon", at_min(60)), at_min(60));
  REQUIRE(d.forecasts.size() == 2);
  CHECK(d.forecasts[0].violations == Weight(1));
  CHECK(d.forecasts[1].violations == Weight(0));
  CHECK(d.lane == 1);
}

TEST_CASE("enqueue: the lower LDS/ABS ratio breaks violation ties") {
  auto idx = catalog({make_order("L1", "limousine", "R", 1), make_order("W2", "wagon", "R", 2)});
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(3), 2));
  c.enqueue(car("Wa", "wagon", at_min(0)), 0);
  const auto d = c.choose_enqueue_lane(car("N", "limousine", at_min(1)), at_min(1));
  REQUIRE(d.forecasts.size() == 2);
  // Behind the wagon the limousine can only leave second: blends 2, 1.
  CHECK(d.forecasts[0].lds == 2);
  CHECK(d.forecasts[0].abs == Rational(2));
  CHECK(d.forecasts[0].ratio == Rational(1));
  CHECK(d.forecasts[1].lds == 1);
  CHECK(d.forecasts[1].ratio == Rational(1, 2));
  CHECK(d.lane == 1);
}

TEST_CASE("enqueue: the virtual drain empties the buffer and leaves the state untouched") {
  std::vector<Order> orders;
  for (int i = 0; i < 30; ++i) {
    orders.push_back(make_order("O" + std::to_string(i), i % 2 ? "wagon" : "limousine", i % 3 ? "R" : "G", i + 1));
  }
  auto idx = catalog(orders);
  Controller c(idx, config(SubstitutionStrategy::last_k_equal(2)));
  for (int i = 0; i < 7; ++i) c.enqueue(car("c" + std::to_string(i), i % 2 ? "wagon" : "limousine", at_min(i)), i % 3);
  const auto before_version = c.version();
  const auto before_pool = c.pool_size();
  const auto before_lanes = c.lanes();
  const auto d = c.choose_enqueue_lane(car("n", "wagon", at_min(10)), at_min(10));
  for (const auto& f : d.forecasts) CHECK(f.length == c.occupancy() + 1);
  CHECK(c.version() == before_version);
  CHECK(c.pool_size() == before_pool);
  CHECK(c.lanes() == before_lanes);
  CHECK(c.history().empty());
}

TEST_CASE("touch_recent and untouch_recent are inverse") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<ColorCode> recent;
    std::vector<std::pair<ColorCode, int>> undo;
    std::vector<std::vector<ColorCode>> states;
    for (int i = 0; i < 20; ++i) {
      states.push_back(recent);
      const auto c = static_cast<ColorCode>(rng() % 6);
      undo.emplace_back(c, touch_recent(recent, c));
      CHECK(recent.front() == c);
    }
    for (int i = 19; i >= 0; --i) {
      untouch_recent(recent, undo[static_cast<std::size_t>(i)].first, undo[static_cast<std::size_t>(i)].second);
      CHECK(recent == states[static_cast<std::size_t>(i)]);
    }
  }
}

namespace {

// Straight transcription of the filter chain over explicit order lists.
struct Naive {
  const ScenarioCatalog* cat;
  SubstitutionStrategy strategy;
  std::set<std::string> consumed;
  std::vector<oracle::Emitted> history;  // most recent first
  std::vector<std::string> recent;       // distinct colors, most recent first

  std::map<std::string, std::size_t> popularity(const std::set<std::string>& bodies) const {
    std::map<std::string, std::size_t> out;
    for (const auto& o : cat->orders) {
      if (!consumed.count(o.order_id) && bodies.count(o.body_type)) ++out[o.color.id];
    }
    return out;
  }

  const Order* choose(const std::vector<const Order*>& cands, const std::map<std::string, std::size_t>& pop,
                      Timestamp now) const {
    if (cands.empty()) return nullptr;
    std::vector<Weight> v;
    for (const auto* o : cands) v.push_back(oracle::violation(o->features, now, history, cat->constraints));
    const Weight vmin = *std::min_element(v.begin(), v.end());
    std::vector<const Order*> s1;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (v[i] == vmin) s1.push_back(cands[i]);
    }
    Date due = s1.front()->due_date;
    for (const auto* o : s1) due = std::min(due, o->due_date);
    std::vector<const Order*> s2;
    std::vector<std::string> present;
    for (const auto* o : s1) {
      if (o->due_date != due) continue;
      s2.push_back(o);
      if (std::find(present.begin(), present.end(), o->color.id) == present.end()) present.push_back(o->color.id);
    }
    std::vector<std::string> window(recent.begin(),
                                    recent.begin() + std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(recent.size()),
                                                                             strategy.k));
    auto in_present = [&](const std::string& c) {
      return std::find(present.begin(), present.end(), c) != present.end();
    };
    auto popular = [&] {
      std::size_t best = 0;
      for (const auto& c : present) best = std::max(best, pop.count(c) ? pop.at(c) : 0);
      std::vector<std::string> out;
      for (const auto& c : present) {
        if ((pop.count(c) ? pop.at(c) : 0) == best) out.push_back(c);
      }
      return out;
    };
    std::optional<std::vector<std::string>> keep;
    switch (strategy.kind) {
      case StrategyKind::None: break;
      case StrategyKind::Popularity: keep = popular(); break;
      case StrategyKind::LastKEqual: {
        std::vector<std::string> k;
        for (const auto& c : window) {
          if (in_present(c)) k.push_back(c);
        }
        if (!k.empty()) keep = k;
        break;
      }
      case StrategyKind::LastKRanked:
      case StrategyKind::LastKRecency: {
        for (const auto& c : window) {
          if (in_present(c)) {
            keep = std::vector<std::string>{c};
            break;
          }
        }
        if (!keep && strategy.kind == StrategyKind::LastKRecency) keep = popular();
        break;
      }
    }
    const Order* best = nullptr;
    for (const auto* o : s2) {
      if (keep && std::find(keep->begin(), keep->end(), o->color.id) == keep->end()) continue;
      if (!best || o->blend_number < best->blend_number) best = o;
    }
    return best;
  }

  const Order* for_body(const std::string& body, Timestamp now) const {
    std::vector<const Order*> cands;
    for (const auto& o : cat->orders) {
      if (!consumed.count(o.order_id) && o.body_type == body) cands.push_back(&o);
    }
    return choose(cands, popularity({body}), now);
  }

  void record(const Order& o, Timestamp when) {
    consumed.insert(o.order_id);
    history.insert(history.begin(), oracle::Emitted{o.features, when});
    recent.erase(std::remove(recent.begin(), recent.end(), o.color.id), recent.end());
    recent.insert(recent.begin(), o.color.id);
  }
};

// Forecast recomputed by actually committing emissions on a copy of the controller.
LaneForecast drain_copy(const Controller& c, const CarBody& incoming, std::size_t lane, Timestamp now) {
  Controller copy = c;
  for (std::size_t l = 0; l < copy.lane_count(); ++l) copy.set_head_blocked(l, false);
  copy.enqueue(incoming, lane);
  const auto interval = c.departure_interval();
  LaneForecast out;
  out.lane = lane;
  std::vector<ColorCode> colors;
  std::vector<std::int64_t> blends;
  for (std::int64_t step = 1; copy.occupancy() > 0; ++step) {
    const Timestamp at = now + Duration{interval.seconds * step};
    Assignment a;
    try {
      a = copy.choose_dequeue(at);
    } catch (const Error&) {
      break;
    }
    const auto em = copy.commit_emission(a, at);
    out.violations += em.violation;
    colors.push_back(c.index().color_of(em.order));
    blends.push_back(c.index().blend_of(em.order));
  }
  out.length = colors.size();
  if (!colors.empty()) {
    out.lds = oracle::lds(blends);
    out.abs = batch_stats(std::span<const ColorCode>(colors)).abs;
    out.ratio = Rational(out.lds) / out.abs;
  }
  return out;
}

SubstitutionStrategy random_strategy(std::mt19937_64& rng) {
  const int k = 1 + static_cast<int>(rng() % 3);
  switch (rng() % 5) {
    case 0: return {StrategyKind::None, 0};
    case 1: return {StrategyKind::Popularity, 0};
    case 2: return {StrategyKind::LastKRecency, k};
    case 3: return {StrategyKind::LastKRanked, k};
    default: return {StrategyKind::LastKEqual, k};
  }
}

}  // namespace

TEST_CASE("controller decisions match a flat re-implementation on small random pools") {
  std::mt19937_64 rng(20230301);
  const std::vector<std::string> colors{"R", "G", "B", "Y"};
  const std::vector<std::string> bodies{"limousine", "wagon"};

  for (int round = 0; round < 150; ++round) {
    std::vector<Order> orders;
    const int n_orders = 16 + static_cast<int>(rng() % 9);
    std::vector<std::int64_t> blends(static_cast<std::size_t>(n_orders));
    std::iota(blends.begin(), blends.end(), 1);
    std::shuffle(blends.begin(), blends.end(), rng);
    for (int i = 0; i < n_orders; ++i) {
      std::vector<std::string> features;
      if (rng() % 3 == 0) features.push_back("A");
      if (rng() % 4 == 0) features.push_back("B");
      orders.push_back(make_order("O" + std::to_string(i), bodies[static_cast<std::size_t>(i % 2)],
                                  colors[rng() % colors.size()], blends[static_cast<std::size_t>(i)], features,
                                  static_cast<int>(rng() % 3)));
    }
    std::vector<Constraint> constraints{no_two("A", 1 + static_cast<std::int64_t>(rng() % 3), 1, 2 + static_cast<int>(rng() % 3)),
                                        Constraint{"b_time", Weight(1, 2), Cnf{{Literal{"B", false}}},
                                                   TimeRule{1, Duration{600}, t0 + Duration{static_cast<std::int64_t>(rng() % 600)}}}};
    auto idx = catalog(orders, constraints);
    Naive naive{&idx->catalog(), random_strategy(rng), {}, {}, {}};
    Controller c(idx, config(naive.strategy, 3, 3, 7));

    Timestamp now = t0;
    int cars = 0;
    for (int step = 0; step < 16; ++step) {
      now = now + Duration{30 + static_cast<std::int64_t>(rng() % 60)};
      const auto r = rng() % 10;
      const auto lanes = c.lanes();
      if (r < 5) {
        if (cars >= 8) continue;
        const auto& body = bodies[rng() % 2];
        const CarBody nc = car("k" + std::to_string(cars), body, now);
        const auto* expect = naive.for_body(body, now);
        REQUIRE(expect != nullptr);
        CHECK(c.index().order(c.assign_order(nc, now).order).order_id == expect->order_id);

        bool any = false;
        for (std::size_t l = 0; l < lanes.size(); ++l) {
          any = any || (!c.lane_locked(l) && lanes[l].size() < 3 && c.occupancy() < 7);
        }
        if (!any) continue;
        const auto d = c.choose_enqueue_lane(nc, now);
        const LaneForecast* best = nullptr;
        for (const auto& f : d.forecasts) {
          const auto ref = drain_copy(c, nc, f.lane, now);
          CHECK(f.length == ref.length);
          CHECK(f.violations == ref.violations);
          CHECK(f.lds == ref.lds);
          CHECK(f.abs == ref.abs);
          if (!best || ref.violations < best->violations ||
              (ref.violations == best->violations && ref.ratio < best->ratio)) {
            best = &f;
          }
        }
        if (best) CHECK(d.lane == best->lane);
        c.enqueue(nc, d.lane);
        ++cars;
      } else if (r < 8) {
        struct H {
          std::size_t lane;
          std::string id, body;
          Timestamp entered;
        };
        std::vector<H> heads;
        for (std::size_t l = 0; l < lanes.size(); ++l) {
          if (lanes[l].empty() || c.head_blocked(l)) continue;
          const auto body = c.car(lanes[l].front());
          heads.push_back({l, body->car_id, body->body_type, body->entered_at});
        }
        if (heads.empty()) {
          CHECK_THROWS_AS(c.choose_dequeue(now), Error);
          continue;
        }
        std::vector<const Order*> winners;
        std::set<std::string> winner_bodies;
        for (const auto& h : heads) {
          if (winner_bodies.count(h.body)) continue;
          if (const auto* w = naive.for_body(h.body, now)) {
            winners.push_back(w);
            winner_bodies.insert(h.body);
          }
        }
        REQUIRE_FALSE(winners.empty());
        const Order* chosen = winners.size() == 1 ? winners.front()
                                                  : naive.choose(winners, naive.popularity(winner_bodies), now);
        const H* oldest = nullptr;
        for (const auto& h : heads) {
          if (h.body == chosen->body_type && (!oldest || h.entered < oldest->entered)) oldest = &h;
        }
        const auto d = c.choose_dequeue(now);
        CHECK(d.car_id == oldest->id);
        CHECK(c.index().order(d.order.order).order_id == chosen->order_id);
        const auto em = c.commit_emission(d, now);
        CHECK(em.violation == oracle::violation(chosen->features, now, naive.history, naive.cat->constraints));
        naive.record(*chosen, now);
      } else if (r == 8) {
        const auto l = rng() % lanes.size();
        c.set_head_blocked(l, !c.head_blocked(l));
      } else {
        const auto l = rng() % lanes.size();
        c.set_lane_locked(l, !c.lane_locked(l));
      }
    }
  }
}
