#include "reseq/sweep.hpp"

#include <charconv>
#include <future>

#include "reseq/error.hpp"
#include "reseq/replay.hpp"

namespace reseq {

namespace {

SweepPoint run_one(std::span<const EventRecord> events, const std::shared_ptr<const CatalogIndex>& index,
                   const ScenarioConfig& config, int k) {
  ControllerConfig cc = config.controller;
  cc.strategy = SubstitutionStrategy::last_k_equal(k);
  const auto result = replay(events, index, cc);
  std::vector<ColorCode> colors;
  std::vector<std::int64_t> blends;
  for (const auto& car : result.leaving) {
    colors.push_back(index->color_of(car.order));
    blends.push_back(index->order(car.order).blend_number);
  }
  return SweepPoint{k, cc.strategy.name(), sequence_kpis(colors, blends, config.paintshop), result.skipped};
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw Error(Errc::InvalidArgument, "bad k value '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<SweepPoint> k_sweep(std::span<const EventRecord> events, std::shared_ptr<const CatalogIndex> index,
                                const ScenarioConfig& config, std::span<const int> ks, bool parallel) {
  for (int k : ks) {
    if (k < 0) throw Error(Errc::InvalidArgument, "k must be non-negative");
  }
  std::vector<SweepPoint> out;
  if (!parallel || ks.size() < 2) {
    for (int k : ks) out.push_back(run_one(events, index, config, k));
    return out;
  }
  std::vector<std::future<SweepPoint>> jobs;
  for (int k : ks) jobs.push_back(std::async(std::launch::async, [&, k] { return run_one(events, index, config, k); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<int> parse_k_values(std::string_view text) {
  std::vector<int> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(text.substr(dots + 2));
    if (hi < lo) throw Error(Errc::InvalidArgument, "empty k range '" + std::string(text) + "'");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_int(text.substr(0, comma)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  if (out.empty()) throw Error(Errc::InvalidArgument, "no k values given");
  return out;
}

}  // namespace reseq
