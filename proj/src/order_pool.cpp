#include "reseq/order_pool.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "reseq/error.hpp"

namespace reseq {

OrderPool::OrderPool(const CatalogIndex& index)
    : index_(&index),
      pools_(index.body_type_count()),
      where_(index.order_count()),
      alive_(index.order_count(), 1),
      alive_total_(index.order_count()) {
  // body -> signature -> due -> color -> orders
  std::vector<std::map<SignatureId, std::map<Date, std::map<ColorCode, std::vector<OrderHandle>>>>> tree(
      pools_.size());
  for (OrderHandle h = 0; h < index.order_count(); ++h) {
    tree[index.body_type_of(h)][index.signature_of(h)][index.order(h).due_date][index.color_of(h)].push_back(h);
  }
  for (std::size_t b = 0; b < pools_.size(); ++b) {
    auto& pool = pools_[b];
    pool.color_counts.assign(index.color_count(), 0);
    for (auto& [sig, by_due] : tree[b]) {
      SignatureGroup group;
      group.signature = sig;
      for (auto& [due, by_color] : by_due) {
        DueBucket bucket;
        bucket.due = due;
        for (auto& [color, orders] : by_color) {
          std::sort(orders.begin(), orders.end(), [&index](OrderHandle x, OrderHandle y) {
            return index.order(x).blend_number < index.order(y).blend_number;
          });
          ColorRun run;
          run.color = color;
          run.alive = orders.size();
          run.orders = std::move(orders);
          bucket.alive += run.alive;
          pool.color_counts[color] += run.alive;
          bucket.runs.push_back(std::move(run));
        }
        group.alive += bucket.alive;
        group.buckets.push_back(std::move(bucket));
      }
      pool.alive += group.alive;
      pool.groups.push_back(std::move(group));
    }
    for (std::uint32_t g = 0; g < pool.groups.size(); ++g) {
      for (std::uint32_t k = 0; k < pool.groups[g].buckets.size(); ++k) {
        const auto& runs = pool.groups[g].buckets[k].runs;
        for (std::uint32_t r = 0; r < runs.size(); ++r) {
          for (std::uint32_t p = 0; p < runs[r].orders.size(); ++p) where_[runs[r].orders[p]] = {g, k, r, p};
        }
      }
    }
  }
}

void OrderPool::consume(OrderHandle h) {
  if (!alive_.at(h)) throw Error(Errc::InconsistentEvent, "order " + index_->order(h).order_id + " already consumed");
  alive_[h] = 0;
  --alive_total_;
  const auto loc = where_[h];
  auto& pool = pools_[index_->body_type_of(h)];
  auto& group = pool.groups[loc.group];
  auto& bucket = group.buckets[loc.bucket];
  auto& run = bucket.runs[loc.run];
  --pool.alive;
  --group.alive;
  --bucket.alive;
  --run.alive;
  --pool.color_counts[run.color];
  while (run.cursor < run.orders.size() && !alive_[run.orders[run.cursor]]) ++run.cursor;
  while (group.cursor < group.buckets.size() && group.buckets[group.cursor].alive == 0) ++group.cursor;
}

void OrderPool::restore(OrderHandle h) {
  if (alive_.at(h)) throw Error(Errc::InconsistentEvent, "order " + index_->order(h).order_id + " is not consumed");
  alive_[h] = 1;
  ++alive_total_;
  const auto loc = where_[h];
  auto& pool = pools_[index_->body_type_of(h)];
  auto& group = pool.groups[loc.group];
  auto& bucket = group.buckets[loc.bucket];
  auto& run = bucket.runs[loc.run];
  ++pool.alive;
  ++group.alive;
  ++bucket.alive;
  ++run.alive;
  ++pool.color_counts[run.color];
  run.cursor = std::min<std::size_t>(run.cursor, loc.pos);
  group.cursor = std::min<std::size_t>(group.cursor, loc.bucket);
}

std::optional<Candidate> OrderPool::best(BodyTypeCode b, const std::vector<char>& violated,
                                         const SubstitutionStrategy& strategy,
                                         std::span<const ColorCode> recent) const {
  if (b >= pools_.size() || pools_[b].alive == 0) return std::nullopt;
  const auto& pool = pools_[b];
  const auto& table = index_->constraints();

  // Steps 1 and 2: the surviving due buckets.
  std::optional<Weight> min_violation;
  std::optional<Date> earliest;
  thread_local std::vector<std::pair<const DueBucket*, Weight>> fronts;
  thread_local std::vector<const DueBucket*> buckets;
  thread_local std::vector<ColorCode> present;
  thread_local std::vector<ColorCode> kept;
  fronts.clear();
  buckets.clear();
  present.clear();
  for (const auto& group : pool.groups) {
    if (group.alive == 0) continue;
    const Weight v = table.weight_of(group.signature, violated);
    const bool zero = v.numerator() == 0;
    const DueBucket* front = &group.buckets[group.cursor];
    fronts.emplace_back(front, v);
    if (!min_violation || (zero ? min_violation->numerator() != 0 : v < *min_violation)) {
      min_violation = v;
      earliest = front->due;
    } else if (v == *min_violation && front->due < *earliest) {
      earliest = front->due;
    }
  }

  // Colors are tracked with generation stamps instead of linear searches.
  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t generation = 0;
  if (stamp.size() < index_->color_count()) stamp.assign(index_->color_count(), 0);
  if (generation > 0xfffffff0u) {
    std::fill(stamp.begin(), stamp.end(), 0);
    generation = 0;
  }
  const std::uint32_t seen = ++generation;
  for (const auto& [bucket, v] : fronts) {
    if (v != *min_violation || bucket->due != *earliest) continue;
    buckets.push_back(bucket);
    for (const auto& run : bucket->runs) {
      if (run.alive > 0 && stamp[run.color] != seen) {
        stamp[run.color] = seen;
        present.push_back(run.color);
      }
    }
  }

  // Steps 3 and 4.
  const bool filtered = color_filter_into(strategy, present, recent, pool.color_counts, kept);
  const std::uint32_t keep = ++generation;
  for (auto c : kept) stamp[c] = keep;
  const OrderHandle* best = nullptr;
  std::int64_t best_blend = 0;
  for (const auto* bucket : buckets) {
    for (const auto& run : bucket->runs) {
      if (run.alive == 0) continue;
      if (filtered && stamp[run.color] != keep) continue;
      const OrderHandle& h = run.orders[run.cursor];
      const auto blend = index_->blend_of(h);
      if (!best || blend < best_blend) {
        best = &h;
        best_blend = blend;
      }
    }
  }
  Candidate out;
  out.order = *best;
  out.violation = *min_violation;
  out.due = *earliest;
  out.color = index_->color_of(*best);
  out.blend = best_blend;
  return out;
}

}  // namespace reseq
