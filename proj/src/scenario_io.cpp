#include "reseq/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "reseq/error.hpp"

namespace reseq {

namespace {

[[noreturn]] void bad(std::string_view what) { throw Error(Errc::ParseError, std::string(what)); }

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad("unknown key '" + key + "' in " + std::string(what));
    }
  }
}

template <class T>
T field(const json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) bad("missing key '" + std::string(key) + "' in " + std::string(what));
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    bad("bad value for '" + std::string(key) + "' in " + std::string(what) + ": " + e.what());
  }
}

std::int64_t parse_int(std::string_view s, std::string_view original) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad("malformed weight '" + std::string(original) + "'");
  return v;
}

std::int64_t pow10(int e) {
  if (e > 18) throw Error(Errc::ParseError, "weight has too many decimal digits");
  std::int64_t p = 1;
  while (e-- > 0) p *= 10;
  return p;
}

// [-]digits[.digits][e[+-]digits] as an exact fraction.
Weight parse_decimal(std::string_view text) {
  std::string_view s = text;
  std::int64_t exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = parse_int(exp_text, text);
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  std::string digits(s);
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    exponent -= static_cast<std::int64_t>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    bad("malformed weight '" + std::string(text) + "'");
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  if (digits.size() > 18) bad("weight '" + std::string(text) + "' has too many digits");
  Weight w(parse_int(digits, text));
  if (exponent >= 0) {
    w *= pow10(static_cast<int>(exponent));
  } else {
    w /= pow10(static_cast<int>(-exponent));
  }
  return negative ? -w : w;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json buffer_to_json(const BufferGeometry& g) {
  return json{{"lanes", g.lanes}, {"per_lane_capacity", g.per_lane_capacity}, {"total_capacity", g.total_capacity}};
}

BufferGeometry buffer_from_json(const json& j) {
  only_keys(j, {"lanes", "per_lane_capacity", "total_capacity"}, "buffer config");
  BufferGeometry g;
  g.lanes = j.value("lanes", g.lanes);
  g.total_capacity = j.value("total_capacity", g.total_capacity);
  g.per_lane_capacity = j.contains("per_lane_capacity") ? j.at("per_lane_capacity").get<std::size_t>()
                                                        : default_per_lane_capacity(g.lanes, g.total_capacity);
  return g;
}

json paintshop_to_json(const PaintShopConfig& p) {
  json j{{"primer_lanes", p.primer_lanes},
         {"primer_per_lane_capacity", p.primer_per_lane_capacity},
         {"sealer_buffer_lanes", p.sealer_buffer_lanes},
         {"paint_lane_count", p.paint_lane_count},
         {"repaint_rate", p.repaint_rate},
         {"rng_seed", p.rng_seed}};
  if (p.fill_target) j["fill_target"] = *p.fill_target;
  return j;
}

PaintShopConfig paintshop_from_json(const json& j) {
  only_keys(j,
            {"primer_lanes", "primer_per_lane_capacity", "sealer_buffer_lanes", "paint_lane_count", "repaint_rate",
             "rng_seed", "fill_target"},
            "paintshop config");
  PaintShopConfig p;
  p.primer_lanes = j.value("primer_lanes", p.primer_lanes);
  p.primer_per_lane_capacity = j.value("primer_per_lane_capacity", p.primer_per_lane_capacity);
  p.sealer_buffer_lanes = j.value("sealer_buffer_lanes", p.sealer_buffer_lanes);
  p.paint_lane_count = j.value("paint_lane_count", p.paint_lane_count);
  p.repaint_rate = j.value("repaint_rate", p.repaint_rate);
  p.rng_seed = j.value("rng_seed", p.rng_seed);
  if (j.contains("fill_target")) p.fill_target = j.at("fill_target").get<std::size_t>();
  return p;
}

}  // namespace

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, std::string(source) + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                      ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

Weight weight_from_json(const json& j) {
  if (j.is_number_integer()) return Weight(j.get<std::int64_t>());
  if (j.is_number_float()) return parse_decimal(j.dump());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const auto den = parse_int(std::string_view(s).substr(slash + 1), s);
      if (den == 0) bad("weight '" + s + "' has a zero denominator");
      return Weight(parse_int(std::string_view(s).substr(0, slash), s), den);
    }
    return parse_decimal(s);
  }
  bad("weight must be a number or a string");
}

json weight_to_json(const Weight& w) {
  if (w.denominator() == 1) return w.numerator();
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

json order_to_json(const Order& o) {
  return json{{"order_id", o.order_id},
              {"body_type", o.body_type},
              {"color", o.color.id},
              {"blend_number", o.blend_number},
              {"due_date", format_date(o.due_date)},
              {"planned_date", format_date(o.planned_date)},
              {"features", o.features}};
}

Order order_from_json(const json& j) {
  constexpr std::string_view what = "order";
  only_keys(j, {"order_id", "body_type", "color", "blend_number", "due_date", "planned_date", "features"}, what);
  Order o;
  o.order_id = field<std::string>(j, "order_id", what);
  o.body_type = field<std::string>(j, "body_type", what);
  o.color = ColorId{field<std::string>(j, "color", what)};
  o.blend_number = field<std::int64_t>(j, "blend_number", what);
  o.due_date = parse_date(field<std::string>(j, "due_date", what));
  o.planned_date = parse_date(field<std::string>(j, "planned_date", what));
  o.features = field<std::vector<std::string>>(j, "features", what);
  std::sort(o.features.begin(), o.features.end());
  o.features.erase(std::unique(o.features.begin(), o.features.end()), o.features.end());
  return o;
}

json constraint_to_json(const Constraint& c) {
  json cnf = json::array();
  for (const auto& clause : c.formula) {
    json lits = json::array();
    for (const auto& lit : clause) lits.push_back({{"feature", lit.feature}, {"neg", lit.negated}});
    cnf.push_back(std::move(lits));
  }
  json kind;
  if (const auto* w = std::get_if<WindowRule>(&c.kind)) {
    kind = {{"window", {{"m", w->m}, {"n", w->n}}}};
  } else {
    const auto& t = std::get<TimeRule>(c.kind);
    kind = {{"time", {{"m", t.m}, {"t_seconds", t.t.seconds}, {"s", format_timestamp(t.s)}}}};
  }
  return json{{"id", c.constraint_id}, {"weight", weight_to_json(c.weight)}, {"cnf", cnf}, {"kind", kind}};
}

Constraint constraint_from_json(const json& j) {
  constexpr std::string_view what = "constraint";
  only_keys(j, {"id", "weight", "cnf", "kind"}, what);
  Constraint c;
  c.constraint_id = field<std::string>(j, "id", what);
  if (!j.contains("weight")) bad("missing key 'weight' in constraint");
  c.weight = weight_from_json(j.at("weight"));
  const json cnf = j.value("cnf", json::array());
  if (!cnf.is_array()) bad("'cnf' must be an array of clauses");
  for (const auto& clause : cnf) {
    if (!clause.is_array()) bad("each CNF clause must be an array of literals");
    Clause out;
    for (const auto& lit : clause) {
      only_keys(lit, {"feature", "neg"}, "literal");
      out.push_back(Literal{field<std::string>(lit, "feature", "literal"), lit.value("neg", false)});
    }
    c.formula.push_back(std::move(out));
  }
  const json& kind = j.contains("kind") ? j.at("kind") : json();
  only_keys(kind, {"window", "time"}, "constraint kind");
  if (kind.size() != 1) bad("constraint kind needs exactly one of 'window' or 'time'");
  if (kind.contains("window")) {
    const auto& w = kind.at("window");
    only_keys(w, {"m", "n"}, "window rule");
    c.kind = WindowRule{field<int>(w, "m", "window rule"), field<int>(w, "n", "window rule")};
  } else {
    const auto& t = kind.at("time");
    only_keys(t, {"m", "t_seconds", "s"}, "time rule");
    c.kind = TimeRule{field<int>(t, "m", "time rule"), Duration{field<std::int64_t>(t, "t_seconds", "time rule")},
                      parse_timestamp(field<std::string>(t, "s", "time rule"))};
  }
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  return json{{"scenario_id", c.scenario_id},
              {"buffer", buffer_to_json(c.controller.buffer)},
              {"strategy", c.controller.strategy.name()},
              {"k", c.controller.strategy.k},
              {"default_departure_interval_seconds", c.controller.default_departure_interval.seconds},
              {"rate_window", c.controller.rate_window},
              {"paintshop", paintshop_to_json(c.paintshop)},
              {"day_boundary_seconds", c.day_boundary_seconds}};
}

ScenarioConfig config_from_json(const json& j) {
  only_keys(j,
            {"scenario_id", "buffer", "strategy", "k", "default_departure_interval_seconds", "rate_window", "paintshop",
             "day_boundary_seconds", "body_types"},
            "config");
  ScenarioConfig c;
  try {
    c.scenario_id = j.value("scenario_id", c.scenario_id);
    if (j.contains("buffer")) c.controller.buffer = buffer_from_json(j.at("buffer"));
    c.controller.strategy = SubstitutionStrategy::parse(j.value("strategy", std::string("last_k_equal")), j.value("k", 3));
    c.controller.default_departure_interval = Duration{j.value("default_departure_interval_seconds", std::int64_t{60})};
    c.controller.rate_window = j.value("rate_window", c.controller.rate_window);
    if (j.contains("paintshop")) c.paintshop = paintshop_from_json(j.at("paintshop"));
    c.day_boundary_seconds = j.value("day_boundary_seconds", std::int64_t{0});
  } catch (const json::exception& e) {
    bad(std::string("bad config value: ") + e.what());
  }
  return c;
}

Scenario read_scenario(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  auto load = [&](const char* name) {
    const auto path = dir / name;
    return parse_json_text(read_text_file(path), path.string());
  };
  auto in_file = [&](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() == Errc::ParseError) throw Error(Errc::ParseError, (dir / name).string() + ": " + e.what());
      throw;
    }
  };

  Scenario s;
  json config_json = json::object();
  if (fs::exists(dir / "config.json")) {
    config_json = load("config.json");
    s.config = in_file("config.json", [&] { return config_from_json(config_json); });
  }

  const json orders = load("orders.json");
  if (!orders.is_array()) throw Error(Errc::ParseError, (dir / "orders.json").string() + ": expected an array");
  in_file("orders.json", [&] {
    for (const auto& o : orders) s.catalog.orders.push_back(order_from_json(o));
    return 0;
  });

  if (fs::exists(dir / "constraints.json")) {
    const json constraints = load("constraints.json");
    if (!constraints.is_array()) throw Error(Errc::ParseError, (dir / "constraints.json").string() + ": expected an array");
    in_file("constraints.json", [&] {
      for (const auto& c : constraints) s.catalog.constraints.push_back(constraint_from_json(c));
      return 0;
    });
  }

  if (fs::exists(dir / "colors.json")) {
    const json colors = load("colors.json");
    in_file("colors.json", [&] {
      if (!colors.is_array()) bad("expected an array");
      for (const auto& c : colors) {
        only_keys(c, {"id", "name"}, "color");
        const auto id = field<std::string>(c, "id", "color");
        s.catalog.colors.push_back(ColorInfo{ColorId{id}, c.value("name", id)});
      }
      return 0;
    });
  } else {
    std::set<std::string> ids;
    for (const auto& o : s.catalog.orders) ids.insert(o.color.id);
    for (const auto& id : ids) s.catalog.colors.push_back(ColorInfo{ColorId{id}, id});
  }

  if (config_json.contains("body_types")) {
    s.catalog.body_types = in_file("config.json", [&] { return field<std::vector<std::string>>(config_json, "body_types", "config"); });
  } else {
    std::set<std::string> tags;
    for (const auto& o : s.catalog.orders) tags.insert(o.body_type);
    s.catalog.body_types.assign(tags.begin(), tags.end());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& dir) {
  Scenario s = read_scenario(dir);
  const auto violations = validate_catalog(s.catalog);
  if (!violations.empty()) {
    std::string msg = "scenario " + dir.string() + " has " + std::to_string(violations.size()) + " violation(s)";
    for (const auto& v : violations) msg += "\n  " + v.kind + " [" + v.entity + "]: " + v.message;
    throw Error(Errc::ValidationFailed, msg);
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& dir) {
  json orders = json::array();
  for (const auto& o : scenario.catalog.orders) orders.push_back(order_to_json(o));
  json constraints = json::array();
  for (const auto& c : scenario.catalog.constraints) constraints.push_back(constraint_to_json(c));
  json colors = json::array();
  for (const auto& c : scenario.catalog.colors) colors.push_back({{"id", c.id.id}, {"name", c.name}});
  json config = config_to_json(scenario.config);
  config["body_types"] = scenario.catalog.body_types;

  write_text_file(dir / "orders.json", orders.dump(1) + "\n");
  write_text_file(dir / "constraints.json", constraints.dump(1) + "\n");
  write_text_file(dir / "colors.json", colors.dump(1) + "\n");
  write_text_file(dir / "config.json", config.dump(2) + "\n");
}

}  // namespace reseq
