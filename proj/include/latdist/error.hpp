#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "latdist/subset.hpp"

namespace latdist::error {

/// Deviation of a subset's rescaled distance distribution from the full
/// lattice's, in several exactly-computed variants.
///
/// With p points and scale = n^4 / p^2, the per-distance deviation is
/// |scale * S_d - L_d| and the per-class deviation is
/// |scale * S_{a,b} - L_{a,b}|. The variants differ only in aggregation:
///   exact_unnormalized : sum of per-distance deviations over all distances
///                        occurring on the lattice
///   exact_normalized   : the same sum divided by the number of distinct
///                        distances
///   pair_estimate      : mean per-class deviation over all
///                        (n^2 + n - 2) / 2 displacement classes
/// Grouping classes that share a distance before taking absolute values can
/// only cancel, so exact_unnormalized never exceeds the class-level sum.
struct ErrorReport {
  int64_t p{};
  Rational scale;
  Rational exact_normalized;
  Rational exact_unnormalized;
  Rational pair_estimate;
  // Per-class deviations in class order (a ascending, then b); populated on request.
  std::optional<std::vector<std::pair<lattice::PairClass, Rational>>> per_class;
};

ErrorReport epsilon(const subset::PointSet& ps, bool with_per_class = false,
                    int64_t max_points = subset::kMaxDistributionPoints);

/// Closed-form error bound for the four configurations that have one,
/// evaluated exactly in rational arithmetic:
///   Corners       : 5n^2/2 - 5n/2 - 15/(2(n-1)) - 16/(n+2) + 13/2
///   CornersCenter : 17n^2/5 - 17n/5 - 6/(n-2) - 56/(5(n-1))
///                   - 124/(5(n+2)) - 31/(3(2n-5)) + 113/15
///   Stretched3x3  : 32n^4/243 - 52n^3/243 + 4n^2/9 - 220n/243
///                   - 23044/(2187(n-1)) - 14000/(2187(n+2))
///                   - 6200/(729(n-1)^2) + 112/(27(n-1)^3)
///                   + 32/(9(n-1)^4) + 428/243
///   Checkerboard  : 2n^2 - n/3 - 2/(3(n+2)) + 1/3
/// Other kinds are rejected. CornersCenter and Stretched3x3 require odd n.
Rational closed_form_bound(subset::ConfigKind kind, const lattice::LatticeSpec& spec);

/// The rounded theoretical frequency table for p points: each class
/// frequency L_{a,b} scaled down by p^2 / n^4 and rounded to the nearest
/// integer, ties away from zero. Generally not realizable by any subset.
struct OptimalDistribution {
  lattice::LatticeSpec spec;
  int64_t p;
  std::vector<std::pair<lattice::PairClass, int64_t>> entries;  // class order
};
OptimalDistribution optimal_distribution(const lattice::LatticeSpec& spec, int64_t p);

/// Error of the optimal distribution, with its entries standing in for the
/// subset class counts. unnormalized sums per-class deviations; normalized
/// divides by the number of distinct distances; pair_estimate divides by
/// the class count.
struct OptimalEpsilon {
  Rational unnormalized;
  Rational normalized;
  Rational pair_estimate;
};
OptimalEpsilon epsilon_optimal(const lattice::LatticeSpec& spec, int64_t p);

/// epsilon_optimal over a grid of p values, sharing the per-lattice setup.
std::vector<std::pair<int64_t, OptimalEpsilon>> epsilon_optimal_sweep(
    const lattice::LatticeSpec& spec, const std::vector<int64_t>& grid);

/// n^2 / sqrt(2 F_n) with F_n the top lattice frequency: below this point
/// count, every subset's unnormalized error is at least C(n^2, 2). The
/// floor is computed exactly (largest t with 2 F_n t^2 <= n^4), not from
/// the double.
struct SmallPThreshold {
  double value;
  int64_t floor_value;
};
SmallPThreshold small_p_threshold(const lattice::LatticeSpec& spec);

/// C(n^2, 2): the unnormalized error of the empty subset, and the exact
/// flat-head value of the optimal-distribution error curve.
int64_t empty_subset_error(const lattice::LatticeSpec& spec);

}  // namespace latdist::error
