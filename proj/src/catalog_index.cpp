#include "reseq/catalog_index.hpp"

namespace reseq {

CatalogIndex::CatalogIndex(ScenarioCatalog catalog)
    : catalog_(std::move(catalog)), table_(catalog_.constraints) {
  auto add_color = [this](const ColorId& id) {
    auto [it, fresh] = color_lookup_.emplace(id.id, static_cast<ColorCode>(colors_.size()));
    if (fresh) colors_.push_back(id);
    return it->second;
  };
  auto add_body = [this](const std::string& tag) {
    auto [it, fresh] = body_lookup_.emplace(tag, static_cast<BodyTypeCode>(body_types_.size()));
    if (fresh) body_types_.push_back(tag);
    return it->second;
  };
  for (const auto& c : catalog_.colors) add_color(c.id);
  for (const auto& b : catalog_.body_types) add_body(b);

  const auto n = catalog_.orders.size();
  order_color_.reserve(n);
  order_body_.reserve(n);
  order_sig_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = catalog_.orders[i];
    order_lookup_.emplace(o.order_id, static_cast<OrderHandle>(i));
    order_color_.push_back(add_color(o.color));
    order_body_.push_back(add_body(o.body_type));
    order_sig_.push_back(table_.signature_of(o.features));
    order_blend_.push_back(o.blend_number);
  }
}

std::optional<OrderHandle> CatalogIndex::find_order(std::string_view order_id) const {
  auto it = order_lookup_.find(std::string(order_id));
  if (it == order_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<ColorCode> CatalogIndex::find_color(const ColorId& id) const {
  auto it = color_lookup_.find(id.id);
  if (it == color_lookup_.end()) return std::nullopt;
  return it->second;
}

BodyTypeCode CatalogIndex::find_body_type(std::string_view tag) const {
  auto it = body_lookup_.find(std::string(tag));
  return it == body_lookup_.end() ? kUnknownBodyType : it->second;
}

}  // namespace reseq
