#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "reseq/error.hpp"
#include "reseq/paintshop.hpp"

using namespace reseq;

namespace {

constexpr ColorCode R = 0, B = 1, G = 2;

std::vector<ColorCode> painted_colors(const PaintOutcome& out) {
  std::vector<ColorCode> all;
  for (std::size_t l = 0; l < out.lanes.size(); ++l) {
    const auto colors = out.lane_colors(l);
    all.insert(all.end(), colors.begin(), colors.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t runs(const std::vector<ColorCode>& seq) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) n += (i == 0 || seq[i] != seq[i - 1]);
  return n;
}

}  // namespace

TEST_CASE("nine-car example reaches three batches in either reading direction") {
  std::vector<ColorCode> seq{R, B, R, R, G, B, G, G, R};
  for (int pass = 0; pass < 2; ++pass) {
    const auto out = simulate_paintshop(std::span<const ColorCode>(seq), PaintShopConfig{});
    CHECK(out.painted == 9);
    CHECK(out.batch_count == 3);
    CHECK(out.aabs == Rational(3));
    std::reverse(seq.begin(), seq.end());
  }
}

TEST_CASE("alternating two colors split into one solid color per paint lane") {
  std::vector<ColorCode> seq;
  for (int i = 0; i < 20; ++i) seq.push_back(i % 2 ? B : R);
  const auto out = simulate_paintshop(std::span<const ColorCode>(seq), PaintShopConfig{});
  CHECK(out.aabs == Rational(10));
  REQUIRE(out.lanes.size() == 2);
  for (std::size_t l = 0; l < 2; ++l) CHECK(runs(out.lane_colors(l)) == 1);
}

TEST_CASE("a single color gives one batch per non-empty paint lane") {
  for (std::size_t n : {1u, 2u, 7u, 48u, 200u}) {
    const std::vector<ColorCode> seq(n, G);
    const auto out = simulate_paintshop(std::span<const ColorCode>(seq), PaintShopConfig{});
    std::size_t non_empty = 0;
    for (std::size_t l = 0; l < out.lanes.size(); ++l) {
      if (out.lanes[l].empty()) continue;
      ++non_empty;
      CHECK(runs(out.lane_colors(l)) == 1);
    }
    CHECK(out.batch_count == non_empty);
    CHECK(out.aabs >= Rational(static_cast<std::int64_t>(n), 2));
    CHECK(out.aabs <= Rational(static_cast<std::int64_t>(n)));
  }
}

TEST_CASE("empty input paints nothing") {
  const std::vector<ColorCode> seq;
  const auto out = simulate_paintshop(std::span<const ColorCode>(seq), PaintShopConfig{});
  CHECK(out.painted == 0);
  CHECK(out.batch_count == 0);
}

TEST_CASE("without repaints every input car is painted exactly once") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto n = 1 + rng() % 300;
    std::vector<PaintItem> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back({static_cast<ColorCode>(rng() % 12), static_cast<std::int64_t>(i)});
    PaintShopConfig cfg;
    cfg.paint_lane_count = 1 + rng() % 3;
    cfg.primer_lanes = 1 + rng() % 7;
    cfg.primer_per_lane_capacity = 1 + rng() % 9;
    const auto out = simulate_paintshop(std::span<const PaintItem>(items), cfg);
    std::vector<PaintItem> painted;
    for (const auto& lane : out.lanes) painted.insert(painted.end(), lane.begin(), lane.end());
    auto key = [](const PaintItem& a, const PaintItem& b) { return a.tag < b.tag; };
    std::sort(painted.begin(), painted.end(), key);
    CHECK(painted == items);
    CHECK(out.painted == n);
    CHECK(out.repaints == 0);
    CHECK(out.aabs >= Rational(1));
  }
}

TEST_CASE("few colors that fit the primer buffer are batched perfectly") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    PaintShopConfig cfg;
    const std::size_t colors = 1 + rng() % cfg.primer_lanes;
    std::vector<ColorCode> seq;
    std::map<ColorCode, std::size_t> count;
    for (ColorCode c = 0; c < colors; ++c) {
      const auto m = 1 + rng() % cfg.primer_per_lane_capacity;
      count[c] = m;
      seq.insert(seq.end(), m, c);
    }
    std::shuffle(seq.begin(), seq.end(), rng);
    const auto out = simulate_paintshop(std::span<const ColorCode>(seq), cfg);
    CHECK(out.batch_count == count.size());
  }
}

TEST_CASE("repaints are seeded and bounded") {
  std::mt19937_64 rng(3);
  std::vector<ColorCode> seq;
  for (int i = 0; i < 500; ++i) seq.push_back(static_cast<ColorCode>(rng() % 8));
  PaintShopConfig cfg;
  cfg.repaint_rate = 0.1;
  cfg.rng_seed = 99;
  const auto a = simulate_paintshop(std::span<const ColorCode>(seq), cfg);
  const auto b = simulate_paintshop(std::span<const ColorCode>(seq), cfg);
  CHECK(a.lanes == b.lanes);
  CHECK(a.aabs == b.aabs);
  CHECK(a.repaints > 0);
  CHECK(a.repaints < seq.size());
  CHECK(a.painted == seq.size() + a.repaints);
  CHECK(assessed_abs(std::span<const ColorCode>(seq), cfg) == a.aabs);

  // Repainted cars keep their color, so every input color shows up at least as often.
  std::map<ColorCode, std::size_t> in, out;
  for (auto c : seq) ++in[c];
  for (auto c : painted_colors(a)) ++out[c];
  for (const auto& [c, n] : in) CHECK(out[c] >= n);
}

TEST_CASE("configuration checks") {
  auto code_of = [](PaintShopConfig cfg) {
    try {
      cfg.validate();
    } catch (const Error& e) {
      return std::optional<Errc>(e.code());
    }
    return std::optional<Errc>();
  };
  PaintShopConfig ok;
  CHECK_FALSE(code_of(ok));
  auto bad = ok;
  bad.primer_lanes = 0;
  CHECK(code_of(bad) == Errc::InvalidArgument);
  bad = ok;
  bad.paint_lane_count = 0;
  CHECK(code_of(bad) == Errc::InvalidArgument);
  bad = ok;
  bad.repaint_rate = 1.0;
  CHECK(code_of(bad) == Errc::InvalidArgument);
  bad = ok;
  bad.repaint_rate = -0.1;
  CHECK(code_of(bad) == Errc::InvalidArgument);
  bad = ok;
  bad.fill_target = 0;
  CHECK(code_of(bad) == Errc::InvalidArgument);
}

TEST_CASE("a lower fill target still paints everything") {
  std::vector<ColorCode> seq;
  for (int i = 0; i < 120; ++i) seq.push_back(static_cast<ColorCode>((i * 7) % 5));
  PaintShopConfig cfg;
  cfg.fill_target = 10;
  const auto out = simulate_paintshop(std::span<const ColorCode>(seq), cfg);
  CHECK(out.painted == seq.size());
  auto sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  CHECK(painted_colors(out) == sorted);
}
