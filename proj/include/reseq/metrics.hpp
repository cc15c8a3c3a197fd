#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "reseq/error.hpp"

namespace reseq {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

struct BatchStats {
  std::size_t length = 0;
  std::size_t batch_count = 0;
  Rational abs{0};  // length / batch_count, 0 for an empty sequence
  std::map<std::size_t, std::size_t> batches_by_length;
  std::map<std::size_t, std::size_t> cars_by_length;  // cars involved in batches of each length
};

/// Batches are maximal runs of equal consecutive elements.
template <class T>
BatchStats batch_stats(std::span<const T> seq) {
  BatchStats out;
  out.length = seq.size();
  std::size_t run = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ++run;
    if (i + 1 == seq.size() || !(seq[i + 1] == seq[i])) {
      ++out.batch_count;
      ++out.batches_by_length[run];
      out.cars_by_length[run] += run;
      run = 0;
    }
  }
  if (out.batch_count > 0) {
    out.abs = Rational(static_cast<std::int64_t>(out.length), static_cast<std::int64_t>(out.batch_count));
  }
  return out;
}

template <class T>
std::size_t color_changeovers(std::span<const T> seq) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!(seq[i] == seq[i - 1])) ++changes;
  }
  return changes;
}

/// Changeovers per car.
inline Rational cpc(std::size_t cars, std::size_t changeovers) {
  if (cars == 0) throw Error(Errc::EmptySequence, "changeovers per car of an empty sequence");
  return Rational(static_cast<std::int64_t>(changeovers), static_cast<std::int64_t>(cars));
}

template <class T>
Rational cpc(std::span<const T> seq) {
  return cpc(seq.size(), color_changeovers(seq));
}

/// Fraction of changeovers saved when the average batch size grows by `abs_gain`
/// (0.3 = +30%): changeovers scale with 1/ABS.
inline double changeover_reduction_from_abs_gain(double abs_gain) { return 1.0 - 1.0 / (1.0 + abs_gain); }

/// Histogram (distinct colors -> number of windows) over every window of `window`
/// consecutive elements, sliding by one.
template <class T, class Hash = std::hash<T>>
std::map<std::size_t, std::size_t> color_differentiation(std::span<const T> seq, std::size_t window = 50) {
  if (window == 0) throw Error(Errc::InvalidArgument, "window must be positive");
  if (seq.size() < window) {
    throw Error(Errc::SequenceTooShort, "sequence of " + std::to_string(seq.size()) +
                                            " cars is shorter than the window of " + std::to_string(window));
  }
  std::unordered_map<T, std::size_t, Hash> counts;
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ++counts[seq[i]];
    if (i >= window) {
      auto it = counts.find(seq[i - window]);
      if (--it->second == 0) counts.erase(it);
    }
    if (i + 1 >= window) ++hist[counts.size()];
  }
  return hist;
}

struct SortednessStats {
  int lds = 0;
  std::vector<int> per_element_lds;  // longest decreasing subsequence ending at each element
  Rational expected_length{0};
  Rational median_length{0};
};

/// Elements must be pairwise distinct (blend numbers).
SortednessStats sortedness(std::span<const std::int64_t> seq);

/// Length of the longest decreasing subsequence in O(n log n).
int lds_fast(std::span<const std::int64_t> seq);

/// LDS / ABS of a non-empty sequence; ABS >= 1 so the ratio is always defined.
template <class T>
Rational lds_abs_ratio(std::span<const T> colors, std::span<const std::int64_t> blends) {
  if (colors.empty()) throw Error(Errc::EmptySequence, "LDS/ABS ratio of an empty sequence");
  if (colors.size() != blends.size()) throw Error(Errc::InvalidArgument, "color and blend sequences differ in length");
  auto stats = batch_stats(colors);
  return Rational(lds_fast(blends)) / stats.abs;
}

/// Population standard deviation of the positions of one planned-date group.
double index_width(std::span<const double> positions);

/// leaving / entering.
double worsening_factor(double entering, double leaving);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct DemingFit {
  double slope = 0;
  double intercept = 0;
};

/// Orthogonal regression (error-variance ratio 1).
DemingFit deming_regression(std::span<const double> x, std::span<const double> y);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0;
  std::optional<double> std_dev;  // sample std, needs >= 2 samples
  std::optional<double> sem;      // std_dev / sqrt(count)
};

SummaryStats summary_stats(std::span<const double> samples);

}  // namespace reseq
