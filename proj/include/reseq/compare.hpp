#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reseq/kpis.hpp"
#include "reseq/replay.hpp"
#include "reseq/scenario_io.hpp"

namespace reseq {

struct DayKpis {
  Date day;
  SequenceKpis entering;  // bodies in arrival order, colored by the order they were built for
  SequenceKpis leaving;
};

/// Ratio leaving/entering of the mean per-day sortedness measures of one scope.
struct Worsening {
  std::string scope;  // "input" or "paint_lane_<n>"
  std::optional<double> lds;
  std::optional<double> expected;
  std::optional<double> median;
};

struct IndexWidthRow {
  Date planned_date;
  std::size_t entering_cars = 0;
  std::size_t leaving_cars = 0;
  double entering = 0;
  double leaving = 0;
};

struct PeriodReport {
  std::string label;
  std::vector<DayKpis> days;
  std::optional<SummaryStats> aabs_entering;
  std::optional<SummaryStats> aabs_leaving;
  std::size_t cars_entering = 0;
  std::size_t cars_leaving = 0;
  std::size_t changeovers_entering = 0;  // paint-lane changeovers summed over days
  std::size_t changeovers_leaving = 0;
  std::optional<Rational> cpc_entering;
  std::optional<Rational> cpc_leaving;
  std::vector<Worsening> worsening;
  std::vector<IndexWidthRow> index_widths;
  std::optional<DemingFit> width_fit;  // leaving width against entering width
  std::optional<double> width_correlation;
  std::size_t skipped = 0;
};

struct PeriodComparison {
  PeriodReport old_period;
  PeriodReport new_period;
  std::optional<double> aabs_gain;             // mean leaving aABS new/old - 1
  std::optional<double> changeover_reduction;  // implied by aabs_gain
  std::optional<double> cpc_change;            // cpc leaving new - old
};

PeriodReport analyze_period(std::string label, const ReplayResult& result, const CatalogIndex& index,
                            const ScenarioConfig& config);

PeriodComparison period_compare(std::span<const EventRecord> old_events, std::span<const EventRecord> new_events,
                                std::shared_ptr<const CatalogIndex> index, const ScenarioConfig& config);

}  // namespace reseq
