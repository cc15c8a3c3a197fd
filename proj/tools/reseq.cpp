#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "reseq/error.hpp"
#include "reseq/report.hpp"
#include "reseq/scenario_io.hpp"
#include "reseq/service.hpp"
#include "reseq/synthetic.hpp"

namespace fs = std::filesystem;
using namespace reseq;

namespace {

struct Options {
  std::string scenario;
  std::vector<std::string> events;
  std::string k;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string format = "both";
  std::size_t cars = 5000;
  double shuffle = 1.0;
  int port = 0;
  std::string log;
};

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::IoError:
      return 2;
    default:
      return 1;
  }
}

Scenario scenario_with_overrides(const Options& o, bool k_is_strategy = true) {
  Scenario s = load_scenario(o.scenario);
  const bool use_k = k_is_strategy && !o.k.empty();
  if (!o.strategy.empty() || use_k) {
    const auto name = o.strategy.empty() ? s.config.controller.strategy.name() : o.strategy;
    const int k = use_k ? parse_k_values(o.k).at(0) : s.config.controller.strategy.k;
    s.config.controller.strategy = SubstitutionStrategy::parse(name, k);
  }
  if (o.seed) s.config.paintshop.rng_seed = *o.seed;
  return s;
}

fs::path events_path(const Options& o, std::size_t i) {
  if (o.events.size() > i) return o.events[i];
  return fs::path(o.scenario) / "events.jsonl";
}

int cmd_validate(const Options& o) {
  const Scenario s = read_scenario(o.scenario);
  const auto violations = validate_catalog(s.catalog);
  for (const auto& v : violations) std::cout << v.kind << "\t" << v.entity << "\t" << v.message << "\n";
  if (!violations.empty()) {
    std::cerr << violations.size() << " violation(s) in " << o.scenario << "\n";
    return 1;
  }
  std::cout << "ok: " << s.catalog.orders.size() << " orders, " << s.catalog.constraints.size() << " constraints\n";
  return 0;
}

int cmd_replay(const Options& o) {
  const Scenario s = scenario_with_overrides(o);
  const auto events = load_events(events_path(o, 0));
  auto index = std::make_shared<const CatalogIndex>(s.catalog);
  const auto result = replay(events, index, s.config.controller);
  const auto report = analyze_period("replay", result, *index, s.config);

  const fs::path out = o.out;
  save_events(result.decisions, out / "decisions.jsonl");
  json body = period_to_json(report, s.config.scenario_id);
  body["strategy"] = s.config.controller.strategy.name();
  body["k"] = s.config.controller.strategy.k;
  std::vector<ColorCode> colors;
  std::vector<std::int64_t> blends;
  for (const auto& car : result.leaving) {
    colors.push_back(index->color_of(car.order));
    blends.push_back(index->order(car.order).blend_number);
  }
  body["leaving"] = kpis_to_json(sequence_kpis(colors, blends, s.config.paintshop));
  emit_report(out, "report", parse_report_format(o.format), body, period_to_csv({&report}));
  std::cout << result.leaving.size() << " cars left the buffer, " << result.skipped << " events skipped\n";
  return 0;
}

int cmd_sweep(const Options& o) {
  const Scenario s = scenario_with_overrides(o, false);
  const auto events = load_events(events_path(o, 0));
  auto index = std::make_shared<const CatalogIndex>(s.catalog);
  const auto ks = parse_k_values(o.k.empty() ? "0..5" : o.k);
  const auto points = k_sweep(events, index, s.config, ks);
  const auto format = parse_report_format(o.format);
  emit_report(o.out, "sweep", format, sweep_to_json(points, s.config.scenario_id), sweep_to_csv(points));
  for (const auto& p : points) {
    emit_report(o.out, "k" + std::to_string(p.k), format, sweep_to_json({p}, s.config.scenario_id), sweep_to_csv({p}));
    std::cout << "k=" << p.k << " abs=" << to_double(p.leaving.batches.abs) << " aabs=" << to_double(p.leaving.aabs)
              << "\n";
  }
  return 0;
}

int cmd_compare(const Options& o) {
  if (o.events.size() != 2) throw Error(Errc::InvalidArgument, "compare needs --events twice (old, then new)");
  const Scenario s = scenario_with_overrides(o);
  auto index = std::make_shared<const CatalogIndex>(s.catalog);
  const auto cmp = period_compare(load_events(o.events[0]), load_events(o.events[1]), index, s.config);
  emit_report(o.out, "report", parse_report_format(o.format), comparison_to_json(cmp, s.config.scenario_id),
              period_to_csv({&cmp.old_period, &cmp.new_period}));
  if (cmp.aabs_gain) std::cout << "aABS gain " << *cmp.aabs_gain << "\n";
  return 0;
}

int cmd_generate(const Options& o) {
  SyntheticConfig cfg;
  cfg.n_cars = o.cars;
  cfg.seed = o.seed.value_or(42);
  cfg.blend_shuffle_strength = o.shuffle;
  const auto data = generate_synthetic(cfg);
  save_scenario(data.scenario, o.out);
  save_events(data.events, fs::path(o.out) / "events.jsonl");
  std::cout << data.scenario.catalog.orders.size() << " orders, " << data.events.size() << " events written to "
            << o.out << "\n";
  return 0;
}

int cmd_serve(Options o) {
  if (o.scenario.empty()) {
    if (const char* dir = std::getenv("SCENARIO_DIR")) o.scenario = dir;
  }
  if (o.scenario.empty()) throw Error(Errc::InvalidArgument, "serve needs --scenario or SCENARIO_DIR");
  if (o.port == 0) {
    const char* p = std::getenv("PORT");
    o.port = p ? std::atoi(p) : 8080;
  }
  const fs::path log = o.log.empty() ? fs::path(o.out) / "decisions.jsonl" : fs::path(o.log);

  Service service;
  httplib::Server server;
  mount(server, service);
  std::optional<Error> load_error;
  std::thread loader([&] {
    try {
      service.load(scenario_with_overrides(o), log);
      std::cerr << "serving scenario " << service.scenario_id() << " on port " << o.port << "\n";
    } catch (const Error& e) {
      load_error = e;
      server.stop();
    }
  });
  const bool ok = server.listen("0.0.0.0", o.port);
  loader.join();
  if (load_error) throw *load_error;
  if (!ok) throw Error(Errc::IoError, "cannot listen on port " + std::to_string(o.port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Body buffer resequencing engine"};
  app.require_subcommand(1);
  Options o;

  auto scenario = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--scenario", o.scenario, "Scenario directory");
    if (required) opt->required();
  };
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", o.strategy, "last_k_equal | last_k_recency | last_k_ranked | popularity | none");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--format", o.format, "json | csv | both");
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario catalog");
  scenario(validate, true);

  auto* replay_cmd = app.add_subcommand("replay", "Replay an event log");
  scenario(replay_cmd, true);
  replay_cmd->add_option("--events", o.events, "Event log (JSON Lines)");
  replay_cmd->add_option("--k", o.k, "Number of recent colors");
  common(replay_cmd);

  auto* sweep = app.add_subcommand("sweep", "Replay once per k value");
  scenario(sweep, true);
  sweep->add_option("--events", o.events, "Event log, default <scenario>/events.jsonl");
  sweep->add_option("--k", o.k, "Range a..b or list a,b,c (default 0..5)");
  common(sweep);

  auto* compare = app.add_subcommand("compare", "Compare two periods");
  scenario(compare, true);
  compare->add_option("--events", o.events, "Old then new event log")->expected(2);
  compare->add_option("--k", o.k, "Number of recent colors");
  common(compare);

  auto* generate = app.add_subcommand("generate", "Write a synthetic scenario and event log");
  generate->add_option("--cars", o.cars, "Number of cars");
  generate->add_option("--shuffle", o.shuffle, "Adjacent swaps per car applied to the arrival order");
  common(generate);

  auto* serve = app.add_subcommand("serve", "Run the HTTP decision service");
  scenario(serve, false);
  serve->add_option("--port", o.port, "Port (default $PORT or 8080)");
  serve->add_option("--log", o.log, "Decision log path (default <out>/decisions.jsonl)");
  serve->add_option("--k", o.k, "Number of recent colors");
  common(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(o);
    if (*replay_cmd) return cmd_replay(o);
    if (*sweep) return cmd_sweep(o);
    if (*compare) return cmd_compare(o);
    if (*generate) return cmd_generate(o);
    if (*serve) return cmd_serve(o);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
