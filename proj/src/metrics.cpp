#include "reseq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace reseq {
namespace {

void require_distinct(std::span<const std::int64_t> seq) {
  std::vector<std::int64_t> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
    throw Error(Errc::DuplicateBlendNumber, "blend number " + std::to_string(*it) + " occurs twice");
  }
}

struct Moments {
  double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
};

Moments moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(Errc::DegenerateInput, "regression needs two samples of equal length >= 3");
  }
  Moments m;
  const double n = static_cast<double>(x.size());
  m.mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  m.my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.mx;
    const double dy = y[i] - m.my;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  if (m.sxx == 0 || m.syy == 0) throw Error(Errc::DegenerateInput, "regression input has zero variance");
  return m;
}

}  // namespace

SortednessStats sortedness(std::span<const std::int64_t> seq) {
  require_distinct(seq);
  SortednessStats out;
  const std::size_t n = seq.size();
  out.per_element_lds.resize(n);
  if (n == 0) return out;

  // Rank so that larger values get smaller Fenwick indices; a prefix maximum then
  // covers exactly the earlier elements greater than the current one.
  std::vector<std::int64_t> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<int> tree(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rank = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), seq[i], std::greater<>()) - sorted.begin()) + 1;
    int best = 0;
    for (std::size_t j = rank - 1; j > 0; j -= j & (~j + 1)) best = std::max(best, tree[j]);
    const int here = best + 1;
    out.per_element_lds[i] = here;
    for (std::size_t j = rank; j <= n; j += j & (~j + 1)) tree[j] = std::max(tree[j], here);
  }

  out.lds = *std::max_element(out.per_element_lds.begin(), out.per_element_lds.end());
  const std::int64_t sum = std::accumulate(out.per_element_lds.begin(), out.per_element_lds.end(), std::int64_t{0});
  out.expected_length = Rational(sum, static_cast<std::int64_t>(n));

  std::vector<int> sorted_lds = out.per_element_lds;
  std::sort(sorted_lds.begin(), sorted_lds.end());
  if (n % 2 == 1) {
    out.median_length = Rational(sorted_lds[n / 2]);
  } else {
    out.median_length = Rational(sorted_lds[n / 2 - 1] + sorted_lds[n / 2], 2);
  }
  return out;
}

int lds_fast(std::span<const std::int64_t> seq) {
  require_distinct(seq);
  // tails[i] = largest possible last element of a decreasing subsequence of length i+1;
  // kept in decreasing order.
  std::vector<std::int64_t> tails;
  for (auto v : seq) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v, std::greater<>());
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int>(tails.size());
}

double index_width(std::span<const double> positions) {
  if (positions.empty()) throw Error(Errc::InvalidArgument, "index width of an empty group");
  const double n = static_cast<double>(positions.size());
  const double mean = std::accumulate(positions.begin(), positions.end(), 0.0) / n;
  double ss = 0;
  for (double p : positions) ss += (p - mean) * (p - mean);
  return std::sqrt(ss / n);
}

double worsening_factor(double entering, double leaving) {
  if (!(entering > 0)) throw Error(Errc::ZeroBaseline, "worsening factor needs a positive entering value");
  return leaving / entering;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  const auto m = moments(x, y);
  return m.sxy / std::sqrt(m.sxx * m.syy);
}

DemingFit deming_regression(std::span<const double> x, std::span<const double> y) {
  const auto m = moments(x, y);
  if (m.sxy == 0) throw Error(Errc::DegenerateInput, "uncorrelated input has no orthogonal fit direction");
  const double diff = m.syy - m.sxx;
  const double slope = (diff + std::sqrt(diff * diff + 4 * m.sxy * m.sxy)) / (2 * m.sxy);
  return {slope, m.my - slope * m.mx};
}

SummaryStats summary_stats(std::span<const double> samples) {
  if (samples.empty()) throw Error(Errc::InsufficientSamples, "summary of an empty sample");
  SummaryStats out;
  out.count = samples.size();
  const double n = static_cast<double>(samples.size());
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() >= 2) {
    double ss = 0;
    for (double s : samples) ss += (s - out.mean) * (s - out.mean);
    out.std_dev = std::sqrt(ss / (n - 1));
    out.sem = *out.std_dev / std::sqrt(n);
  }
  return out;
}

}  // namespace reseq
