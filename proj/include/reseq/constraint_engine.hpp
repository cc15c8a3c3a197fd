#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reseq/constraint.hpp"
#include "reseq/domain.hpp"
#include "reseq/time.hpp"

namespace reseq {

/// True iff every clause has a satisfied literal. `features` must be sorted.
bool matches(std::span<const std::string> features, const Cnf& formula);

/// Ids of the catalog constraints whose formula the order satisfies.
std::vector<std::string> constraints_of(const Order& order, const ScenarioCatalog& catalog);

using ConstraintIndex = std::uint32_t;
using SignatureId = std::uint32_t;

// Constraints compiled for evaluation. Orders matching exactly the same subset of
// constraints share a signature, so violation weights are computed per signature.
class ConstraintTable {
 public:
  ConstraintTable() = default;
  explicit ConstraintTable(std::vector<Constraint> constraints);

  std::size_t size() const { return constraints_.size(); }
  const Constraint& at(ConstraintIndex c) const { return constraints_.at(c); }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  std::vector<ConstraintIndex> match_indices(std::span<const std::string> features) const;

  SignatureId intern(std::vector<ConstraintIndex> members);
  SignatureId signature_of(std::span<const std::string> features) { return intern(match_indices(features)); }

  std::size_t signature_count() const { return signatures_.size(); }
  const std::vector<ConstraintIndex>& members(SignatureId s) const { return signatures_.at(s); }
  bool contains(SignatureId s, ConstraintIndex c) const { return bits_[s * constraints_.size() + c] != 0; }

  /// Largest n-1 over window rules; history older than this cannot affect a window rule.
  std::size_t window_span() const { return window_span_; }

  /// Sum of weights of `s`'s constraints flagged in `violated`.
  Weight weight_of(SignatureId s, const std::vector<char>& violated) const;

 private:
  std::vector<Constraint> constraints_;
  std::vector<std::vector<ConstraintIndex>> signatures_;
  std::map<std::vector<ConstraintIndex>, SignatureId> lookup_;
  std::vector<char> bits_;
  std::size_t window_span_ = 0;
};

struct EmissionRecord {
  std::uint32_t order = 0;   // caller-defined order handle
  std::uint32_t color = 0;   // caller-defined color code
  std::int64_t blend_number = 0;
  SignatureId signature = 0;
  Timestamp left_at;
};

// Emitted orders, most recent first. Time-rule windows are counted incrementally so
// that pushes and pops (used to undo virtual emissions) stay O(|C_o|).
class EmissionHistory {
 public:
  explicit EmissionHistory(const ConstraintTable& table, std::size_t min_retained = 0);

  const ConstraintTable& table() const { return *table_; }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  /// i-th most recent record (0 = latest).
  const EmissionRecord& recent(std::size_t i) const { return records_[records_.size() - 1 - i]; }

  void push(const EmissionRecord& record);
  void pop();

  /// Drops records and time windows that can no longer influence any evaluation at
  /// times >= the latest emission.
  void prune();

  int window_matches(ConstraintIndex c, std::size_t span) const;
  int time_matches(ConstraintIndex c, Timestamp at) const;

  bool violated(ConstraintIndex c, Timestamp at) const;
  /// violated(c, at) for every constraint.
  void violation_flags(Timestamp at, std::vector<char>& out) const;

  Weight violation(SignatureId s, Timestamp at) const;

 private:
  std::int64_t window_of(ConstraintIndex c, Timestamp at) const;

  const ConstraintTable* table_;
  std::size_t retained_;
  std::vector<EmissionRecord> records_;
  std::vector<std::unordered_map<std::int64_t, int>> time_counts_;
};

/// v_o for `order` emitted at `t_prime` after `history`.
Weight violation_weight(const Order& order, Timestamp t_prime, const EmissionHistory& history);

/// Sum of violation weights of each element against the elements emitted before it.
Weight sequence_violation_total(std::span<const std::pair<Order, Timestamp>> sequence,
                                const std::vector<Constraint>& constraints);

}  // namespace reseq
