#include "latdist/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "latdist/numtheory.hpp"

namespace latdist::lattice {

DistanceDistribution::DistanceDistribution(std::vector<std::pair<int64_t, int64_t>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && entries_[i].first == entries_[i - 1].first)
      throw std::invalid_argument("DistanceDistribution: duplicate key");
    total_ += entries_[i].second;
  }
}

int64_t DistanceDistribution::frequency(int64_t d) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                             [](const auto& e, int64_t key) { return e.first < key; });
  if (it == entries_.end() || it->first != d) return 0;
  return it->second;
}

int64_t class_frequency(const LatticeSpec& spec, const PairClass& cls) {
  if (!cls.valid_for(spec))
    throw std::out_of_range("class_frequency: class out of range for lattice");
  int64_t base = (spec.n - cls.a) * (spec.n - cls.b);
  return (cls.b == 0 || cls.a == cls.b) ? 2 * base : 4 * base;
}

int64_t distance_frequency(const LatticeSpec& spec, int64_t d) {
  if (d < 1) throw std::invalid_argument("distance_frequency: d must be >= 1");
  int64_t sum = 0;
  for (const auto& rep : numtheory::representations(d)) {
    if (rep.a <= spec.n - 1 && rep.b <= spec.n - 1) {
      sum += 2 * (spec.n - rep.a) * (spec.n - rep.b);
    }
  }
  return sum;
}

DistanceDistribution full_distribution(const LatticeSpec& spec, int64_t max_side) {
  if (spec.n > max_side)
    throw std::length_error("full_distribution: side exceeds configured maximum");
  std::unordered_map<int64_t, int64_t> acc;
  acc.reserve(static_cast<size_t>(spec.class_count()));
  for_each_class(spec, [&](PairClass cls) {
    acc[cls.sq_distance()] += class_frequency(spec, cls);
  });
  std::vector<std::pair<int64_t, int64_t>> entries(acc.begin(), acc.end());
  return DistanceDistribution(std::move(entries));
}

MostCommon most_common(const LatticeSpec& spec) {
  auto dist = full_distribution(spec);
  MostCommon best{0, 0};
  for (const auto& [d, freq] : dist.entries()) {  // ascending d: first max wins
    if (freq > best.frequency) best = {d, freq};
  }
  return best;
}

int64_t curve_index(int64_t d) { return numtheory::r2(d) / 4; }

ClassAverages class_averages(const LatticeSpec& spec) {
  const int64_t n = spec.n;
  ClassAverages out{
      .axis_diag = Rational(BigInt(n) * (5 * n - 1), 6),
      .generic = Rational(BigInt(n) * (3 * n - 1), 3),
  };

  // Independent recomputation by direct summation over the actual classes.
  BigInt axis_diag_sum = 0;
  for (int64_t a = 1; a <= n - 1; ++a) {
    axis_diag_sum += class_frequency(spec, {a, a});
    axis_diag_sum += class_frequency(spec, {a, 0});
  }
  if (Rational(axis_diag_sum, 2 * (n - 1)) != out.axis_diag)
    throw std::logic_error("class_averages: axis/diagonal summation mismatch");

  if (n >= 3) {
    BigInt generic_sum = 0;
    for (int64_t a = 2; a <= n - 1; ++a) {
      for (int64_t b = 1; b < a; ++b) generic_sum += class_frequency(spec, {a, b});
    }
    if (Rational(generic_sum, BigInt(n - 1) * (n - 2) / 2) != out.generic)
      throw std::logic_error("class_averages: generic summation mismatch");
  }
  return out;
}

ClassFractions class_fractions(const LatticeSpec& spec) {
  const int64_t n = spec.n;
  ClassFractions out{
      .axis_diag = Rational(4, n + 2),
      .generic = Rational(n - 2, n + 2),
  };
  // The class family sizes are exact: 2(n-1) axis/diagonal classes and
  // (n-1)(n-2)/2 generic ones out of (n^2+n-2)/2 total.
  if (Rational(2 * (n - 1), spec.class_count()) != out.axis_diag ||
      Rational(BigInt(n - 1) * (n - 2) / 2, spec.class_count()) != out.generic)
    throw std::logic_error("class_fractions: class census mismatch");
  return out;
}

}  // namespace latdist::lattice
