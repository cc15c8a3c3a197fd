#include "reseq/compare.hpp"

#include <algorithm>
#include <unordered_map>

namespace reseq {

namespace {

struct DayCars {
  std::vector<std::size_t> entering;  // indices into ReplayResult::entering
  std::vector<std::size_t> leaving;   // indices into ReplayResult::leaving
};

struct MeasureSums {
  std::vector<double> lds_in, lds_out, exp_in, exp_out, med_in, med_out;

  void add(std::span<const std::int64_t> in, std::span<const std::int64_t> out) {
    if (in.empty() || out.empty()) return;
    const auto a = summarize_sortedness(in);
    const auto b = summarize_sortedness(out);
    lds_in.push_back(a.lds);
    lds_out.push_back(b.lds);
    exp_in.push_back(to_double(a.expected_length));
    exp_out.push_back(to_double(b.expected_length));
    med_in.push_back(to_double(a.median_length));
    med_out.push_back(to_double(b.median_length));
  }

  Worsening factor(std::string scope) const {
    Worsening w{std::move(scope), {}, {}, {}};
    if (lds_in.empty()) return w;
    auto mean = [](const std::vector<double>& v) { return summary_stats(v).mean; };
    w.lds = worsening_factor(mean(lds_in), mean(lds_out));
    w.expected = worsening_factor(mean(exp_in), mean(exp_out));
    w.median = worsening_factor(mean(med_in), mean(med_out));
    return w;
  }
};

std::optional<SummaryStats> stats_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return summary_stats(v);
}

}  // namespace

PeriodReport analyze_period(std::string label, const ReplayResult& result, const CatalogIndex& index,
                            const ScenarioConfig& config) {
  PeriodReport report;
  report.label = std::move(label);
  report.skipped = result.skipped;
  const auto boundary = config.day_boundary_seconds;

  std::map<Date, DayCars> days;
  for (std::size_t i = 0; i < result.entering.size(); ++i) {
    days[date_of(result.entering[i].entered_at, boundary)].entering.push_back(i);
  }
  for (std::size_t i = 0; i < result.leaving.size(); ++i) {
    days[date_of(result.leaving[i].left_at, boundary)].leaving.push_back(i);
  }

  std::unordered_map<std::string, std::size_t> entering_pos;
  for (std::size_t i = 0; i < result.entering.size(); ++i) entering_pos.emplace(result.entering[i].car_id, i);

  std::vector<double> aabs_in, aabs_out;
  MeasureSums input;
  std::vector<MeasureSums> lanes(config.paintshop.paint_lane_count);

  for (const auto& [day, cars] : days) {
    std::vector<ColorCode> in_colors, out_colors;
    std::vector<std::int64_t> in_blends, out_blends;
    for (auto i : cars.entering) {
      if (!result.entering[i].planned) continue;
      in_colors.push_back(index.color_of(*result.entering[i].planned));
      in_blends.push_back(index.order(*result.entering[i].planned).blend_number);
    }
    std::vector<PaintItem> out_items;
    for (auto i : cars.leaving) {
      const auto h = result.leaving[i].order;
      out_colors.push_back(index.color_of(h));
      out_blends.push_back(index.order(h).blend_number);
      out_items.push_back(PaintItem{index.color_of(h), static_cast<std::int64_t>(i)});
    }

    DayKpis d{day, sequence_kpis(in_colors, in_blends, config.paintshop),
              sequence_kpis(out_colors, out_blends, config.paintshop)};
    if (d.entering.cars > 0) {
      aabs_in.push_back(to_double(d.entering.aabs));
      report.cars_entering += d.entering.cars;
      report.changeovers_entering += d.entering.paint_changeovers;
    }
    if (d.leaving.cars > 0) {
      aabs_out.push_back(to_double(d.leaving.aabs));
      report.cars_leaving += d.leaving.cars;
      report.changeovers_leaving += d.leaving.paint_changeovers;
    }
    input.add(in_blends, out_blends);

    // Per paint lane: painted blends against the same bodies' blends on entry.
    const auto paint = simulate_paintshop(std::span<const PaintItem>(out_items), config.paintshop);
    for (std::size_t lane = 0; lane < paint.lanes.size(); ++lane) {
      std::vector<std::int64_t> painted;
      std::vector<std::pair<std::size_t, std::int64_t>> entered;
      for (const auto& item : paint.lanes[lane]) {
        const auto& car = result.leaving[static_cast<std::size_t>(item.tag)];
        painted.push_back(index.order(car.order).blend_number);
        auto it = entering_pos.find(car.car_id);
        if (it != entering_pos.end() && result.entering[it->second].planned) {
          entered.emplace_back(it->second, index.order(*result.entering[it->second].planned).blend_number);
        }
      }
      std::sort(entered.begin(), entered.end());
      std::vector<std::int64_t> entered_blends;
      for (const auto& [pos, blend] : entered) entered_blends.push_back(blend);
      lanes[lane].add(entered_blends, painted);
    }
    report.days.push_back(std::move(d));
  }

  report.aabs_entering = stats_of(aabs_in);
  report.aabs_leaving = stats_of(aabs_out);
  if (report.cars_entering > 0) report.cpc_entering = cpc(report.cars_entering, report.changeovers_entering);
  if (report.cars_leaving > 0) report.cpc_leaving = cpc(report.cars_leaving, report.changeovers_leaving);

  report.worsening.push_back(input.factor("input"));
  for (std::size_t lane = 0; lane < lanes.size(); ++lane) {
    report.worsening.push_back(lanes[lane].factor("paint_lane_" + std::to_string(lane + 1)));
  }

  // Index widths per planned date, positions taken over the whole period.
  std::map<Date, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (std::size_t i = 0; i < result.entering.size(); ++i) {
    if (result.entering[i].planned) {
      groups[index.order(*result.entering[i].planned).planned_date].first.push_back(static_cast<double>(i));
    }
  }
  for (std::size_t i = 0; i < result.leaving.size(); ++i) {
    groups[index.order(result.leaving[i].order).planned_date].second.push_back(static_cast<double>(i));
  }
  std::vector<double> xs, ys;
  for (const auto& [date, pos] : groups) {
    if (pos.first.empty() || pos.second.empty()) continue;
    IndexWidthRow row{date, pos.first.size(), pos.second.size(), index_width(pos.first), index_width(pos.second)};
    xs.push_back(row.entering);
    ys.push_back(row.leaving);
    report.index_widths.push_back(row);
  }
  try {
    report.width_fit = deming_regression(xs, ys);
    report.width_correlation = pearson_correlation(xs, ys);
  } catch (const Error&) {
    // Fewer than three planned dates or no spread: no fit to report.
  }
  return report;
}

PeriodComparison period_compare(std::span<const EventRecord> old_events, std::span<const EventRecord> new_events,
                                std::shared_ptr<const CatalogIndex> index, const ScenarioConfig& config) {
  PeriodComparison out;
  out.old_period = analyze_period("P_old", replay(old_events, index, config.controller), *index, config);
  out.new_period = analyze_period("P_new", replay(new_events, index, config.controller), *index, config);
  const auto& a = out.old_period.aabs_leaving;
  const auto& b = out.new_period.aabs_leaving;
  if (a && b && a->mean > 0) {
    out.aabs_gain = b->mean / a->mean - 1.0;
    out.changeover_reduction = changeover_reduction_from_abs_gain(*out.aabs_gain);
  }
  if (out.old_period.cpc_leaving && out.new_period.cpc_leaving) {
    out.cpc_change = to_double(*out.new_period.cpc_leaving) - to_double(*out.old_period.cpc_leaving);
  }
  return out;
}

}  // namespace reseq
