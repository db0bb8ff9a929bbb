#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "latdist/core.hpp"

namespace latdist::lattice {

/// The n x n grid of integer points with coordinates in [0, n-1].
struct LatticeSpec {
  explicit LatticeSpec(int64_t side) : n(side) {
    if (side < 2) throw std::invalid_argument("LatticeSpec: side must be >= 2");
  }
  int64_t n;

  int64_t point_count() const { return n * n; }
  int64_t total_pairs() const { return pairs_of(n * n); }
  int64_t max_sq_distance() const { return 2 * (n - 1) * (n - 1); }
  // Number of displacement classes (a, b) with 0 <= b <= a <= n-1, (a,b) != (0,0).
  int64_t class_count() const { return (n * n + n - 2) / 2; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// Canonical displacement class: a >= b >= 0, not both zero. A pair of
/// points realizes (a, b) when their coordinate differences are {a, b}
/// in either order.
struct PairClass {
  int64_t a{};
  int64_t b{};

  int64_t sq_distance() const { return a * a + b * b; }
  bool valid_for(const LatticeSpec& spec) const {
    return b >= 0 && a >= b && a <= spec.n - 1 && (a != 0 || b != 0);
  }
  friend auto operator<=>(const PairClass&, const PairClass&) = default;
};

/// Exact multiset of squared distances: entries (d, frequency) sorted by d.
class DistanceDistribution {
 public:
  DistanceDistribution() = default;
  // Takes (d, frequency) pairs with distinct d; sorts and totals them.
  explicit DistanceDistribution(std::vector<std::pair<int64_t, int64_t>> entries);

  const std::vector<std::pair<int64_t, int64_t>>& entries() const { return entries_; }
  int64_t frequency(int64_t d) const;  // 0 when d is absent
  int64_t total() const { return total_; }
  int64_t distinct() const { return static_cast<int64_t>(entries_.size()); }

  friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;

 private:
  std::vector<std::pair<int64_t, int64_t>> entries_;
  int64_t total_ = 0;
};

/// Frequency of the class (a, b) on the full lattice:
/// 2(n-a)(n-b) when b = 0 or a = b, 4(n-a)(n-b) otherwise.
int64_t class_frequency(const LatticeSpec& spec, const PairClass& cls);

/// Frequency of the distance sqrt(d) on the full lattice: the sum of
/// 2(n-a)(n-b) over representations a^2 + b^2 = d, a >= 1, b >= 0, with
/// both a and b at most n-1. Zero when d never occurs.
int64_t distance_frequency(const LatticeSpec& spec, int64_t d);

inline constexpr int64_t kMaxFullDistributionSide = 2000;

/// Distribution of all C(n^2, 2) point-pair distances, assembled by
/// iterating displacement classes rather than point pairs.
DistanceDistribution full_distribution(const LatticeSpec& spec,
                                       int64_t max_side = kMaxFullDistributionSide);

struct MostCommon {
  int64_t d;
  int64_t frequency;
};
/// Most frequent distance; ties resolved toward the smallest d.
MostCommon most_common(const LatticeSpec& spec);

/// r2(d) / 4: the index of the frequency curve the distance sqrt(d) falls
/// on, or 0 when d is not a sum of two squares.
int64_t curve_index(int64_t d);

struct ClassAverages {
  Rational axis_diag;  // mean class frequency over {b = 0 or a = b}: n(5n-1)/6
  Rational generic;    // mean over {a > b > 0}: n(3n-1)/3
};
/// Both closed forms, re-derived internally by direct summation over the
/// actual classes; a mismatch throws std::logic_error. For n = 2 there are
/// no generic classes and the closed form is returned unchecked.
ClassAverages class_averages(const LatticeSpec& spec);

struct ClassFractions {
  Rational axis_diag;  // 4 / (n+2)
  Rational generic;    // (n-2) / (n+2)
};
ClassFractions class_fractions(const LatticeSpec& spec);

/// Visits every displacement class: a = 1..n-1, b = 0..a.
template <typename F>
void for_each_class(const LatticeSpec& spec, F&& fn) {
  for (int64_t a = 1; a <= spec.n - 1; ++a) {
    for (int64_t b = 0; b <= a; ++b) {
      fn(PairClass{a, b});
    }
  }
}

}  // namespace latdist::lattice
