#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reseq/constraint_engine.hpp"
#include "reseq/domain.hpp"

namespace reseq {

using OrderHandle = std::uint32_t;
using ColorCode = std::uint32_t;
using BodyTypeCode = std::uint32_t;

inline constexpr BodyTypeCode kUnknownBodyType = ~BodyTypeCode{0};

// Immutable, interned view of a scenario catalog used on every hot path.
// Shared read-only between controllers.
class CatalogIndex {
 public:
  explicit CatalogIndex(ScenarioCatalog catalog);

  const ScenarioCatalog& catalog() const { return catalog_; }
  const ConstraintTable& constraints() const { return table_; }

  std::size_t order_count() const { return catalog_.orders.size(); }
  const Order& order(OrderHandle h) const { return catalog_.orders.at(h); }
  std::optional<OrderHandle> find_order(std::string_view order_id) const;

  ColorCode color_of(OrderHandle h) const { return order_color_[h]; }
  BodyTypeCode body_type_of(OrderHandle h) const { return order_body_[h]; }
  SignatureId signature_of(OrderHandle h) const { return order_sig_[h]; }
  std::int64_t blend_of(OrderHandle h) const { return order_blend_[h]; }

  std::size_t color_count() const { return colors_.size(); }
  const ColorId& color(ColorCode c) const { return colors_.at(c); }
  std::optional<ColorCode> find_color(const ColorId& id) const;

  std::size_t body_type_count() const { return body_types_.size(); }
  const std::string& body_type(BodyTypeCode b) const { return body_types_.at(b); }
  /// kUnknownBodyType when no order or declaration uses this tag.
  BodyTypeCode find_body_type(std::string_view tag) const;

 private:
  ScenarioCatalog catalog_;
  ConstraintTable table_;
  std::vector<ColorId> colors_;
  std::vector<std::string> body_types_;
  std::unordered_map<std::string, OrderHandle> order_lookup_;
  std::unordered_map<std::string, ColorCode> color_lookup_;
  std::unordered_map<std::string, BodyTypeCode> body_lookup_;
  std::vector<ColorCode> order_color_;
  std::vector<BodyTypeCode> order_body_;
  std::vector<SignatureId> order_sig_;
  std::vector<std::int64_t> order_blend_;
};

}  // namespace reseq
