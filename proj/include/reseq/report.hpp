#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "reseq/compare.hpp"
#include "reseq/sweep.hpp"

namespace reseq {

enum class ReportFormat { Json, Csv, Both };

ReportFormat parse_report_format(std::string_view text);

nlohmann::json kpis_to_json(const SequenceKpis& k);
nlohmann::json sweep_to_json(const std::vector<SweepPoint>& points, const std::string& scenario_id);
std::string sweep_to_csv(const std::vector<SweepPoint>& points);
nlohmann::json period_to_json(const PeriodReport& report, const std::string& scenario_id);
std::string period_to_csv(const std::vector<const PeriodReport*>& reports);
nlohmann::json comparison_to_json(const PeriodComparison& cmp, const std::string& scenario_id);

/// Writes `<stem>.json` and/or `<stem>.csv` into `dir`; Error(IoError) on failure.
void emit_report(const std::filesystem::path& dir, const std::string& stem, ReportFormat format,
                 const nlohmann::json& body, const std::string& csv);

}  // namespace reseq
