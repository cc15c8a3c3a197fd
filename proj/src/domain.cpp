#include "reseq/domain.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

#include "reseq/error.hpp"

namespace reseq {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::LaneFull: return "LaneFull";
    case Errc::LaneLocked: return "LaneLocked";
    case Errc::BufferFull: return "BufferFull";
    case Errc::LaneEmpty: return "LaneEmpty";
    case Errc::HeadBlocked: return "HeadBlocked";
    case Errc::UnknownLane: return "UnknownLane";
    case Errc::SequenceTooShort: return "SequenceTooShort";
    case Errc::DuplicateBlendNumber: return "DuplicateBlendNumber";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::ZeroBaseline: return "ZeroBaseline";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::NoCompatibleOrder: return "NoCompatibleOrder";
    case Errc::NoEligibleHead: return "NoEligibleHead";
    case Errc::NoAvailableLane: return "NoAvailableLane";
    case Errc::StaleDecision: return "StaleDecision";
    case Errc::InconsistentEvent: return "InconsistentEvent";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::vector<CatalogViolation> validate_catalog(const ScenarioCatalog& catalog) {
  std::vector<CatalogViolation> out;
  auto report = [&out](std::string kind, const std::string& entity, std::string message) {
    out.push_back({std::move(kind), entity, std::move(message)});
  };

  std::set<ColorId> colors;
  for (const auto& c : catalog.colors) {
    if (!colors.insert(c.id).second) report("duplicate_color", c.id.id, "color listed twice");
  }
  std::unordered_set<std::string> body_types;
  for (const auto& b : catalog.body_types) {
    if (!body_types.insert(b).second) report("duplicate_body_type", b, "body type listed twice");
  }

  std::unordered_set<std::string> order_ids;
  std::unordered_map<std::int64_t, std::string> blends;
  for (const auto& o : catalog.orders) {
    if (o.order_id.empty()) report("empty_order_id", o.order_id, "order id must not be empty");
    if (!order_ids.insert(o.order_id).second) {
      report("duplicate_order_id", o.order_id, "order id used twice");
    }
    if (o.blend_number <= 0) {
      report("non_positive_blend_number", o.order_id,
             "blend number " + std::to_string(o.blend_number) + " is not positive");
    }
    auto [it, fresh] = blends.emplace(o.blend_number, o.order_id);
    if (!fresh) {
      report("duplicate_blend_number", o.order_id,
             "blend number " + std::to_string(o.blend_number) + " already used by " + it->second);
    }
    if (!colors.count(o.color)) {
      report("unknown_color", o.order_id, "color '" + o.color.id + "' is not in the color catalog");
    }
    if (!body_types.count(o.body_type)) {
      report("unknown_body_type", o.order_id, "body type '" + o.body_type + "' is not declared");
    }
  }

  std::unordered_set<std::string> constraint_ids;
  for (const auto& c : catalog.constraints) {
    if (!constraint_ids.insert(c.constraint_id).second) {
      report("duplicate_constraint_id", c.constraint_id, "constraint id used twice");
    }
    if (c.weight < 0) report("negative_weight", c.constraint_id, "weight must be non-negative");
    for (const auto& clause : c.formula) {
      if (clause.empty()) report("empty_clause", c.constraint_id, "CNF clauses must not be empty");
    }
    if (const auto* w = std::get_if<WindowRule>(&c.kind)) {
      if (w->m < 1 || w->n < 1) report("invalid_window", c.constraint_id, "m and n must be positive");
      if (w->m > w->n) report("invalid_window", c.constraint_id, "window rule requires m <= n");
    } else {
      const auto& t = std::get<TimeRule>(c.kind);
      if (t.m < 1) report("invalid_time_rule", c.constraint_id, "m must be positive");
      if (t.t.seconds <= 0) report("invalid_time_rule", c.constraint_id, "t must be positive");
    }
  }
  return out;
}

}  // namespace reseq
