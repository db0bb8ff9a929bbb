#include "latdist/error.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace latdist::error {

namespace {

using lattice::LatticeSpec;
using lattice::PairClass;
using subset::ConfigKind;
using subset::PointSet;

BigInt abs_big(BigInt v) { return v < 0 ? -v : v; }

// Class counts of a subset keyed by a * n + b.
std::unordered_map<int64_t, int64_t> subset_class_counts(const PointSet& ps) {
  const auto& pts = ps.points();
  const int64_t n = ps.spec().n;
  std::unordered_map<int64_t, int64_t> counts;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      int64_t dx = std::abs(pts[i].x - pts[j].x);
      int64_t dy = std::abs(pts[i].y - pts[j].y);
      int64_t a = std::max(dx, dy), b = std::min(dx, dy);
      ++counts[a * n + b];
    }
  }
  return counts;
}

}  // namespace

ErrorReport epsilon(const PointSet& ps, bool with_per_class, int64_t max_points) {
  const LatticeSpec& spec = ps.spec();
  const int64_t p = ps.size();
  if (p < 1)
    throw std::invalid_argument("epsilon: empty subset; use empty_subset_error instead");
  if (p > max_points)
    throw std::length_error("epsilon: point count exceeds configured maximum");

  const int64_t n = spec.n;
  const BigInt n4 = BigInt(n) * n * n * n;
  const BigInt p2 = BigInt(p) * p;
  const auto full = lattice::full_distribution(spec);
  const auto counts = subset_class_counts(ps);

  // Both sums have common denominator p^2: accumulate the numerators
  // |n^4 S - p^2 L| exactly, handling the untouched classes in bulk
  // (their deviation is just p^2 L, and all L sum to C(n^2, 2)).
  BigInt exact_num = 0;
  BigInt pair_num = 0;
  BigInt touched_class_freq = 0;
  std::unordered_map<int64_t, int64_t> sq_counts;  // d -> S_d
  for (const auto& [key, count] : counts) {
    PairClass cls{key / n, key % n};
    int64_t lab = lattice::class_frequency(spec, cls);
    pair_num += abs_big(n4 * count - p2 * lab);
    touched_class_freq += lab;
    sq_counts[cls.sq_distance()] += count;
  }
  pair_num += p2 * (BigInt(spec.total_pairs()) - touched_class_freq);

  BigInt touched_dist_freq = 0;
  for (const auto& [d, count] : sq_counts) {
    int64_t ld = full.frequency(d);
    exact_num += abs_big(n4 * count - p2 * ld);
    touched_dist_freq += ld;
  }
  exact_num += p2 * (BigInt(spec.total_pairs()) - touched_dist_freq);

  ErrorReport report;
  report.p = p;
  report.scale = Rational(n4, p2);
  report.exact_unnormalized = Rational(exact_num, p2);
  report.exact_normalized = Rational(exact_num, p2 * full.distinct());
  report.pair_estimate = Rational(pair_num, p2 * spec.class_count());

  if (with_per_class) {
    std::vector<std::pair<PairClass, Rational>> per_class;
    per_class.reserve(static_cast<size_t>(spec.class_count()));
    lattice::for_each_class(spec, [&](PairClass cls) {
      auto it = counts.find(cls.a * n + cls.b);
      int64_t s = it == counts.end() ? 0 : it->second;
      BigInt num = abs_big(n4 * s - p2 * lattice::class_frequency(spec, cls));
      per_class.emplace_back(cls, Rational(num, p2));
    });
    report.per_class = std::move(per_class);
  }
  return report;
}

Rational closed_form_bound(ConfigKind kind, const LatticeSpec& spec) {
  const Rational N(spec.n);
  switch (kind) {
    case ConfigKind::Corners:
      return 5 * N * N / 2 - 5 * N / 2 - Rational(15) / (2 * (N - 1)) - 16 / (N + 2) +
             Rational(13, 2);
    case ConfigKind::CornersCenter:
      if (spec.n % 2 == 0)
        throw std::invalid_argument("closed_form_bound: corners-center requires odd side");
      if (spec.n < 3)
        throw std::invalid_argument("closed_form_bound: corners-center requires side >= 3");
      return 17 * N * N / 5 - 17 * N / 5 - 6 / (N - 2) - Rational(56) / (5 * (N - 1)) -
             Rational(124) / (5 * (N + 2)) - Rational(31) / (3 * (2 * N - 5)) +
             Rational(113, 15);
    case ConfigKind::Stretched3x3: {
      if (spec.n % 2 == 0)
        throw std::invalid_argument("closed_form_bound: stretched3x3 requires odd side");
      const Rational M = N - 1;
      return 32 * N * N * N * N / 243 - 52 * N * N * N / 243 + 4 * N * N / 9 -
             220 * N / 243 - Rational(23044) / (2187 * M) - Rational(14000) / (2187 * (N + 2)) -
             Rational(6200) / (729 * M * M) + Rational(112) / (27 * M * M * M) +
             Rational(32) / (9 * M * M * M * M) + Rational(428, 243);
    }
    case ConfigKind::Checkerboard:
      return 2 * N * N - N / 3 - Rational(2) / (3 * (N + 2)) + Rational(1, 3);
    default:
      throw std::invalid_argument("closed_form_bound: no closed form for this configuration");
  }
}

OptimalDistribution optimal_distribution(const LatticeSpec& spec, int64_t p) {
  if (p < 1 || p > spec.point_count())
    throw std::invalid_argument("optimal_distribution: p must be in [1, n^2]");
  const BigInt n4 = BigInt(spec.n) * spec.n * spec.n * spec.n;
  const BigInt p2 = BigInt(p) * p;
  OptimalDistribution out{spec, p, {}};
  out.entries.reserve(static_cast<size_t>(spec.class_count()));
  lattice::for_each_class(spec, [&](PairClass cls) {
    BigInt lab = lattice::class_frequency(spec, cls);
    // Nearest integer to lab * p^2 / n^4, half rounding up (away from zero).
    BigInt rounded = (2 * lab * p2 + n4) / (2 * n4);
    out.entries.emplace_back(cls, rounded.convert_to<int64_t>());
  });
  return out;
}

namespace {

OptimalEpsilon epsilon_from_entries(const LatticeSpec& spec, int64_t p,
                                    const OptimalDistribution& opt, int64_t distinct) {
  const BigInt n4 = BigInt(spec.n) * spec.n * spec.n * spec.n;
  const BigInt p2 = BigInt(p) * p;
  BigInt num = 0;
  for (const auto& [cls, entry] : opt.entries) {
    num += abs_big(n4 * entry - p2 * lattice::class_frequency(spec, cls));
  }
  return OptimalEpsilon{
      .unnormalized = Rational(num, p2),
      .normalized = Rational(num, p2 * distinct),
      .pair_estimate = Rational(num, p2 * spec.class_count()),
  };
}

}  // namespace

OptimalEpsilon epsilon_optimal(const LatticeSpec& spec, int64_t p) {
  auto opt = optimal_distribution(spec, p);
  return epsilon_from_entries(spec, p, opt, lattice::full_distribution(spec).distinct());
}

std::vector<std::pair<int64_t, OptimalEpsilon>> epsilon_optimal_sweep(
    const LatticeSpec& spec, const std::vector<int64_t>& grid) {
  const int64_t distinct = lattice::full_distribution(spec).distinct();
  std::vector<std::pair<int64_t, OptimalEpsilon>> out;
  out.reserve(grid.size());
  for (int64_t p : grid) {
    auto opt = optimal_distribution(spec, p);
    out.emplace_back(p, epsilon_from_entries(spec, p, opt, distinct));
  }
  return out;
}

SmallPThreshold small_p_threshold(const LatticeSpec& spec) {
  const int64_t top = lattice::most_common(spec).frequency;
  const double n2 = static_cast<double>(spec.n) * static_cast<double>(spec.n);
  const double value = n2 / std::sqrt(2.0 * static_cast<double>(top));

  // Exact floor: largest t >= 0 with 2 * top * t^2 <= n^4.
  const BigInt n4 = BigInt(spec.n) * spec.n * spec.n * spec.n;
  int64_t t = static_cast<int64_t>(std::floor(value));
  while (t > 0 && 2 * BigInt(top) * t * t > n4) --t;
  while (2 * BigInt(top) * (t + 1) * (t + 1) <= n4) ++t;
  return SmallPThreshold{value, t};
}

int64_t empty_subset_error(const LatticeSpec& spec) { return spec.total_pairs(); }

}  // namespace latdist::error
