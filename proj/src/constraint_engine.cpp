#include "reseq/constraint_engine.hpp"

#include <algorithm>

#include "reseq/error.hpp"

namespace reseq {

bool matches(std::span<const std::string> features, const Cnf& formula) {
  for (const auto& clause : formula) {
    bool satisfied = false;
    for (const auto& lit : clause) {
      bool present = std::binary_search(features.begin(), features.end(), lit.feature);
      if (present != lit.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::vector<std::string> constraints_of(const Order& order, const ScenarioCatalog& catalog) {
  std::vector<std::string> out;
  for (const auto& c : catalog.constraints) {
    if (matches(order.features, c.formula)) out.push_back(c.constraint_id);
  }
  return out;
}

ConstraintTable::ConstraintTable(std::vector<Constraint> constraints) : constraints_(std::move(constraints)) {
  for (const auto& c : constraints_) {
    if (const auto* w = std::get_if<WindowRule>(&c.kind)) {
      window_span_ = std::max(window_span_, static_cast<std::size_t>(std::max(w->n - 1, 0)));
    } else if (std::get<TimeRule>(c.kind).t.seconds <= 0) {
      throw Error(Errc::InvalidArgument, "time rule of " + c.constraint_id + " needs t > 0");
    }
  }
}

std::vector<ConstraintIndex> ConstraintTable::match_indices(std::span<const std::string> features) const {
  std::vector<ConstraintIndex> out;
  for (ConstraintIndex c = 0; c < constraints_.size(); ++c) {
    if (matches(features, constraints_[c].formula)) out.push_back(c);
  }
  return out;
}

SignatureId ConstraintTable::intern(std::vector<ConstraintIndex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (auto it = lookup_.find(members); it != lookup_.end()) return it->second;
  auto id = static_cast<SignatureId>(signatures_.size());
  bits_.resize(bits_.size() + constraints_.size(), 0);
  for (auto c : members) bits_[id * constraints_.size() + c] = 1;
  lookup_.emplace(members, id);
  signatures_.push_back(std::move(members));
  return id;
}

Weight ConstraintTable::weight_of(SignatureId s, const std::vector<char>& violated) const {
  Weight total{0};
  for (auto c : signatures_[s]) {
    if (violated[c]) total += constraints_[c].weight;
  }
  return total;
}

EmissionHistory::EmissionHistory(const ConstraintTable& table, std::size_t min_retained)
    : table_(&table),
      retained_(std::max(table.window_span(), min_retained)),
      time_counts_(table.size()) {}

std::int64_t EmissionHistory::window_of(ConstraintIndex c, Timestamp at) const {
  const auto& rule = std::get<TimeRule>(table_->at(c).kind);
  return floor_div(at.seconds - rule.s.seconds, rule.t.seconds);
}

void EmissionHistory::push(const EmissionRecord& record) {
  records_.push_back(record);
  for (auto c : table_->members(record.signature)) {
    if (std::holds_alternative<TimeRule>(table_->at(c).kind)) ++time_counts_[c][window_of(c, record.left_at)];
  }
}

void EmissionHistory::pop() {
  const auto& record = records_.back();
  for (auto c : table_->members(record.signature)) {
    if (std::holds_alternative<TimeRule>(table_->at(c).kind)) {
      auto& bucket = time_counts_[c];
      auto it = bucket.find(window_of(c, record.left_at));
      if (--it->second == 0) bucket.erase(it);
    }
  }
  records_.pop_back();
}

void EmissionHistory::prune() {
  if (records_.size() > 2 * retained_ + 64) {
    records_.erase(records_.begin(), records_.end() - static_cast<std::ptrdiff_t>(retained_));
  }
  if (records_.empty()) return;
  const Timestamp latest = records_.back().left_at;
  for (ConstraintIndex c = 0; c < table_->size(); ++c) {
    if (!std::holds_alternative<TimeRule>(table_->at(c).kind)) continue;
    const auto current = window_of(c, latest);
    std::erase_if(time_counts_[c], [current](const auto& kv) { return kv.first < current; });
  }
}

int EmissionHistory::window_matches(ConstraintIndex c, std::size_t span) const {
  int count = 0;
  const std::size_t limit = std::min(span, records_.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (table_->contains(recent(i).signature, c)) ++count;
  }
  return count;
}

int EmissionHistory::time_matches(ConstraintIndex c, Timestamp at) const {
  const auto& bucket = time_counts_[c];
  auto it = bucket.find(window_of(c, at));
  return it == bucket.end() ? 0 : it->second;
}

bool EmissionHistory::violated(ConstraintIndex c, Timestamp at) const {
  const auto& kind = table_->at(c).kind;
  if (const auto* w = std::get_if<WindowRule>(&kind)) {
    return window_matches(c, static_cast<std::size_t>(std::max(w->n - 1, 0))) >= w->m;
  }
  return time_matches(c, at) >= std::get<TimeRule>(kind).m;
}

void EmissionHistory::violation_flags(Timestamp at, std::vector<char>& out) const {
  out.resize(table_->size());
  for (ConstraintIndex c = 0; c < table_->size(); ++c) out[c] = violated(c, at) ? 1 : 0;
}

Weight EmissionHistory::violation(SignatureId s, Timestamp at) const {
  Weight total{0};
  for (auto c : table_->members(s)) {
    if (violated(c, at)) total += table_->at(c).weight;
  }
  return total;
}

Weight violation_weight(const Order& order, Timestamp t_prime, const EmissionHistory& history) {
  Weight total{0};
  for (auto c : history.table().match_indices(order.features)) {
    if (history.violated(c, t_prime)) total += history.table().at(c).weight;
  }
  return total;
}

Weight sequence_violation_total(std::span<const std::pair<Order, Timestamp>> sequence,
                                const std::vector<Constraint>& constraints) {
  ConstraintTable table(constraints);
  std::vector<SignatureId> sigs;
  sigs.reserve(sequence.size());
  for (const auto& [order, at] : sequence) sigs.push_back(table.signature_of(order.features));

  EmissionHistory history(table);
  Weight total{0};
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& [order, at] = sequence[i];
    total += history.violation(sigs[i], at);
    history.push(EmissionRecord{static_cast<std::uint32_t>(i), 0, order.blend_number, sigs[i], at});
  }
  return total;
}

}  // namespace reseq
