#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "latdist/error.hpp"
#include "latdist/subset.hpp"

namespace latdist::search {

enum class Objective { Maximize, Minimize };
enum class Metric { ExactNormalized, ExactUnnormalized, PairEstimate };
enum class Mode { Exhaustive, RandomRestart };

inline constexpr int64_t kDefaultBudget = 100'000'000;

struct SearchTask {
  lattice::LatticeSpec spec;
  int64_t p{};
  Objective objective = Objective::Maximize;
  Metric metric = Metric::ExactUnnormalized;
  Mode mode = Mode::Exhaustive;
  // Exhaustive mode refuses to start when C(n^2, p) exceeds this.
  int64_t budget = kDefaultBudget;
  // Random-restart parameters; the result is a pure function of the seed.
  int64_t iterations = 1000;
  uint64_t seed = 0;
};

struct SearchResult {
  subset::PointSet best;  // canonical form; empty when budget_exceeded
  Rational value;
  int64_t candidates_examined{};
  int symmetry_class_size{};  // distinct dihedral images of best (1..8)
  bool budget_exceeded{};
};

/// Image of a point under one of the lattice's 8 symmetries. Bit 0 flips x,
/// bit 1 flips y, bit 2 swaps the axes (applied first).
subset::Point transform_point(subset::Point pt, int transform, int64_t n);

/// Lexicographically smallest of the 8 dihedral images. All error metrics
/// are invariant across an orbit, so searches only ever evaluate these.
subset::PointSet canonicalize(const subset::PointSet& ps);

int orbit_size(const subset::PointSet& ps);

/// Incrementally maintained class counts for a mutating subset. Adding or
/// removing a point touches only the pairs it participates in, so both
/// operations are O(p); counts always equal the from-scratch tally.
class ClassCounter {
 public:
  explicit ClassCounter(lattice::LatticeSpec spec) : spec_(spec) {}

  void add(subset::Point pt);     // rejects duplicates and off-lattice points
  void remove(subset::Point pt);  // rejects absent points

  int64_t count(const lattice::PairClass& cls) const;
  const std::vector<subset::Point>& points() const { return points_; }
  int64_t size() const { return static_cast<int64_t>(points_.size()); }
  // Nonzero class counts keyed by a * n + b.
  const std::unordered_map<int64_t, int64_t>& nonzero() const { return counts_; }

  subset::PointSet to_point_set() const;

 private:
  lattice::LatticeSpec spec_;
  std::vector<subset::Point> points_;
  std::unordered_map<int64_t, int64_t> counts_;
};

/// Runs the search. Exhaustive mode enumerates p-subsets in lexicographic
/// order, skips non-canonical ones, and returns the global optimum with a
/// deterministic tie-break (canonical form, lexicographically smallest).
/// When C(n^2, p) exceeds the budget the result comes back flagged instead
/// of partially enumerated. Random-restart mode runs seeded hill-climbing
/// restarts; every iteration derives its own generator from (seed, index),
/// so results do not depend on thread scheduling.
SearchResult run(const SearchTask& task);

}  // namespace latdist::search
