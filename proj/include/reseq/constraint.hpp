#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "reseq/time.hpp"

namespace reseq {

using Weight = boost::rational<std::int64_t>;

struct Literal {
  std::string feature;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

// Conjunction of clauses; an empty formula matches every order.
using Cnf = std::vector<Clause>;

/// At most `m` matching orders among any `n` consecutively emitted orders.
struct WindowRule {
  int m = 1;
  int n = 1;
  bool operator==(const WindowRule&) const = default;
};

/// At most `m` matching orders inside each window [s + l*t, s + (l+1)*t).
struct TimeRule {
  int m = 1;
  Duration t{kSecondsPerDay};
  Timestamp s{};
  bool operator==(const TimeRule&) const = default;
};

struct Constraint {
  std::string constraint_id;
  Weight weight{0};
  Cnf formula;
  std::variant<WindowRule, TimeRule> kind;

  bool operator==(const Constraint&) const = default;
};

}  // namespace reseq
