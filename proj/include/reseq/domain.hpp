#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reseq/constraint.hpp"
#include "reseq/time.hpp"

namespace reseq {

struct ColorId {
  std::string id;
  auto operator<=>(const ColorId&) const = default;
};

struct ColorInfo {
  ColorId id;
  std::string name;
  bool operator==(const ColorInfo&) const = default;
};

// A logical build request. `blend_number` is the position in the planned build sequence.
struct Order {
  std::string order_id;
  std::string body_type;
  ColorId color;
  std::int64_t blend_number = 0;
  Date due_date;
  Date planned_date;
  std::vector<std::string> features;  // sorted, unique

  bool operator==(const Order&) const = default;
};

// A physical body waiting for an order. `assigned_order` is the order it was built for, if known.
struct CarBody {
  std::string car_id;
  std::string body_type;
  Timestamp entered_at;
  std::optional<std::string> assigned_order;

  bool operator==(const CarBody&) const = default;
};

struct ScenarioCatalog {
  std::vector<Order> orders;
  std::vector<Constraint> constraints;
  std::vector<ColorInfo> colors;
  std::vector<std::string> body_types;

  bool operator==(const ScenarioCatalog&) const = default;
};

struct CatalogViolation {
  std::string kind;    // e.g. "duplicate_blend_number", "unknown_color"
  std::string entity;  // offending order/constraint id
  std::string message;
};

/// Checks every catalog invariant. An empty result means the catalog is valid.
std::vector<CatalogViolation> validate_catalog(const ScenarioCatalog& catalog);

}  // namespace reseq
