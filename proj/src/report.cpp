#include "reseq/report.hpp"

#include <cstdio>

#include "reseq/error.hpp"
#include "reseq/scenario_io.hpp"

namespace reseq {

namespace {

std::string exact(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json histogram(const std::map<std::size_t, std::size_t>& h) {
  json j = json::object();
  for (const auto& [key, count] : h) j[std::to_string(key)] = count;
  return j;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json stats_json(const std::optional<SummaryStats>& s) {
  if (!s) return nullptr;
  return json{{"count", s->count}, {"mean", s->mean}, {"std", optional_number(s->std_dev)},
              {"sem", optional_number(s->sem)}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<Rational>& r) { return r ? fmt(to_double(*r)) : std::string(); }

std::size_t mass_at_most(const std::map<std::size_t, std::size_t>& h, std::size_t limit) {
  std::size_t total = 0;
  for (const auto& [colors, windows] : h) {
    if (colors <= limit) total += windows;
  }
  return total;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "both") return ReportFormat::Both;
  throw Error(Errc::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

json kpis_to_json(const SequenceKpis& k) {
  json j{{"cars", k.cars},
         {"batch_count", k.batches.batch_count},
         {"abs", to_double(k.batches.abs)},
         {"abs_exact", exact(k.batches.abs)},
         {"changeovers", k.changeovers},
         {"cpc", k.cpc ? json(to_double(*k.cpc)) : json(nullptr)},
         {"batch_length_histogram", histogram(k.batches.cars_by_length)},
         {"color_differentiation_50", histogram(k.differentiation)},
         {"aabs", to_double(k.aabs)},
         {"aabs_exact", exact(k.aabs)},
         {"paint_batches", k.paint_batches},
         {"paint_changeovers", k.paint_changeovers}};
  if (k.sortedness) {
    j["lds"] = k.sortedness->lds;
    j["expected_length"] = to_double(k.sortedness->expected_length);
    j["median_length"] = to_double(k.sortedness->median_length);
  }
  return j;
}

json sweep_to_json(const std::vector<SweepPoint>& points, const std::string& scenario_id) {
  json arr = json::array();
  for (const auto& p : points) {
    json j = kpis_to_json(p.leaving);
    j["k"] = p.k;
    j["strategy"] = p.strategy;
    j["skipped_events"] = p.skipped;
    arr.push_back(std::move(j));
  }
  return json{{"scenario_id", scenario_id}, {"kind", "k_sweep"}, {"points", arr}};
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::string out = "k,strategy,cars,batch_count,abs,aabs,paint_batches,windows_le_6_colors,windows_total,skipped\n";
  for (const auto& p : points) {
    std::size_t windows = 0;
    for (const auto& [c, n] : p.leaving.differentiation) windows += n;
    out += std::to_string(p.k) + "," + p.strategy + "," + std::to_string(p.leaving.cars) + "," +
           std::to_string(p.leaving.batches.batch_count) + "," + fmt(to_double(p.leaving.batches.abs)) + "," +
           fmt(to_double(p.leaving.aabs)) + "," + std::to_string(p.leaving.paint_batches) + "," +
           std::to_string(mass_at_most(p.leaving.differentiation, 6)) + "," + std::to_string(windows) + "," +
           std::to_string(p.skipped) + "\n";
  }
  return out;
}

json period_to_json(const PeriodReport& r, const std::string& scenario_id) {
  json days = json::array();
  for (const auto& d : r.days) {
    days.push_back({{"day", format_date(d.day)}, {"entering", kpis_to_json(d.entering)}, {"leaving", kpis_to_json(d.leaving)}});
  }
  json worsening = json::array();
  for (const auto& w : r.worsening) {
    worsening.push_back({{"scope", w.scope},
                         {"lds", optional_number(w.lds)},
                         {"expected", optional_number(w.expected)},
                         {"median", optional_number(w.median)}});
  }
  json widths = json::array();
  for (const auto& w : r.index_widths) {
    widths.push_back({{"planned_date", format_date(w.planned_date)},
                      {"entering_cars", w.entering_cars},
                      {"leaving_cars", w.leaving_cars},
                      {"entering", w.entering},
                      {"leaving", w.leaving}});
  }
  json fit = nullptr;
  if (r.width_fit) fit = {{"slope", r.width_fit->slope}, {"intercept", r.width_fit->intercept}};
  return json{{"scenario_id", scenario_id},
              {"label", r.label},
              {"aabs_entering", stats_json(r.aabs_entering)},
              {"aabs_leaving", stats_json(r.aabs_leaving)},
              {"cars_entering", r.cars_entering},
              {"cars_leaving", r.cars_leaving},
              {"changeovers_entering", r.changeovers_entering},
              {"changeovers_leaving", r.changeovers_leaving},
              {"cpc_entering", r.cpc_entering ? json(to_double(*r.cpc_entering)) : json(nullptr)},
              {"cpc_leaving", r.cpc_leaving ? json(to_double(*r.cpc_leaving)) : json(nullptr)},
              {"worsening", worsening},
              {"index_widths", widths},
              {"index_width_fit", fit},
              {"index_width_correlation", optional_number(r.width_correlation)},
              {"skipped_events", r.skipped},
              {"days", days}};
}

std::string period_to_csv(const std::vector<const PeriodReport*>& reports) {
  std::string out =
      "label,day,cars_entering,cars_leaving,abs_entering,abs_leaving,aabs_entering,aabs_leaving,"
      "cpc_entering,cpc_leaving,lds_entering,lds_leaving\n";
  for (const auto* r : reports) {
    for (const auto& d : r->days) {
      auto lds = [](const SequenceKpis& k) { return k.sortedness ? std::to_string(k.sortedness->lds) : std::string(); };
      out += r->label + "," + format_date(d.day) + "," + std::to_string(d.entering.cars) + "," +
             std::to_string(d.leaving.cars) + "," + fmt(to_double(d.entering.batches.abs)) + "," +
             fmt(to_double(d.leaving.batches.abs)) + "," + fmt(to_double(d.entering.aabs)) + "," +
             fmt(to_double(d.leaving.aabs)) + "," + fmt(d.entering.cpc) + "," + fmt(d.leaving.cpc) + "," +
             lds(d.entering) + "," + lds(d.leaving) + "\n";
    }
  }
  return out;
}

json comparison_to_json(const PeriodComparison& cmp, const std::string& scenario_id) {
  return json{{"scenario_id", scenario_id},
              {"old", period_to_json(cmp.old_period, scenario_id)},
              {"new", period_to_json(cmp.new_period, scenario_id)},
              {"aabs_gain", optional_number(cmp.aabs_gain)},
              {"changeover_reduction", optional_number(cmp.changeover_reduction)},
              {"cpc_change", optional_number(cmp.cpc_change)}};
}

void emit_report(const std::filesystem::path& dir, const std::string& stem, ReportFormat format, const json& body,
                 const std::string& csv) {
  if (format != ReportFormat::Csv) write_text_file(dir / (stem + ".json"), body.dump(2) + "\n");
  if (format != ReportFormat::Json) write_text_file(dir / (stem + ".csv"), csv);
}

}  // namespace reseq
