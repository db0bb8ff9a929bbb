#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "latdist/lattice.hpp"

namespace latdist::subset {

struct Point {
  int64_t x{};
  int64_t y{};
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// A subset of the lattice: points stored sorted lexicographically,
/// duplicates rejected, every coordinate within [0, n-1].
class PointSet {
 public:
  PointSet(lattice::LatticeSpec spec, std::vector<Point> points);
  static PointSet full(const lattice::LatticeSpec& spec);

  const lattice::LatticeSpec& spec() const { return spec_; }
  const std::vector<Point>& points() const { return points_; }
  int64_t size() const { return static_cast<int64_t>(points_.size()); }
  bool contains(const Point& p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  lattice::LatticeSpec spec_;
  std::vector<Point> points_;
};

enum class ConfigKind {
  Corners,          // the four corner points, p = 4
  CornersCenter,    // corners plus the center, p = 5 (odd n only)
  Stretched3x3,     // {0, (n-1)/2, n-1}^2, p = 9 (odd n only)
  Perimeter,        // boundary points, p = 4(n-1)
  FilledPerimeter,  // Chebyshev distance < depth from the boundary
  Checkerboard,     // points with x + y even, p = ceil(n^2 / 2)
};

PointSet generate(const lattice::LatticeSpec& spec, ConfigKind kind, int64_t depth = 1);

// Cardinality generate() will produce, without building the set.
int64_t config_size(const lattice::LatticeSpec& spec, ConfigKind kind, int64_t depth = 1);

/// Number of unordered point pairs in the subset realizing class (a, b),
/// by direct pair enumeration.
int64_t class_frequency(const PointSet& ps, const lattice::PairClass& cls);

inline constexpr int64_t kMaxDistributionPoints = 20'000;

/// Distribution of the subset's C(p, 2) pairwise squared distances.
lattice::DistanceDistribution distribution(const PointSet& ps,
                                           int64_t max_points = kMaxDistributionPoints);

/// Closed-form count of checkerboard pairs at displacement (a, 0) or (0, a):
/// n(n-a) for even n, n(n-a) + 1 for odd n. Only even a occurs on the
/// checkerboard; odd a is rejected.
int64_t checkerboard_axis_count(const lattice::LatticeSpec& spec, int64_t a);

/// Closed-form count of checkerboard pairs at displacement (a, a):
/// (n-a)^2 for even n; for odd n, (n-a)^2 + 1 when a is even and (n-a)^2
/// when a is odd.
int64_t checkerboard_diag_count(const lattice::LatticeSpec& spec, int64_t a);

}  // namespace latdist::subset
