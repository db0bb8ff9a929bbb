#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "latdist/core.hpp"

namespace latdist::numtheory {

struct PrimePower {
  int64_t prime;
  int exponent;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization, primes strictly ascending, exponents >= 1.
// factorize(1) is the empty product. Rejects n < 1.
using Factorization = std::vector<PrimePower>;
Factorization factorize(int64_t n);

/// Number of ordered pairs (a, b) in Z^2 with a^2 + b^2 = d.
/// Computed from the factorization: writing d = 2^f * prod p_i^{g_i} *
/// prod q_j^{h_j} with p_i = 1 (mod 4) and q_j = 3 (mod 4), the count is
/// 4 * prod (g_i + 1) when every h_j is even, and 0 otherwise.
/// Rejects d < 1.
int64_t r2(int64_t d);

/// r2 for every d in [1, limit] in one sieve pass. Index 0 is unused (0).
std::vector<int32_t> r2_table(int64_t limit);

// A solution of a^2 + b^2 = d with a >= 1, b >= 0. Note b may exceed a:
// (3,4) and (4,3) are distinct representations of 25.
struct Representation {
  int64_t a;
  int64_t b;
  friend auto operator<=>(const Representation&, const Representation&) = default;
};

/// All representations of d, sorted by a ascending. Every nonzero point of
/// Z^2 on the circle of radius sqrt(d) lies in exactly one rotation orbit
/// {(a,b), (-b,a), (-a,-b), (b,-a)}, and each orbit contains exactly one
/// member with a >= 1, b >= 0, so the list has r2(d)/4 elements.
std::vector<Representation> representations(int64_t d);

/// Smallest d with r2(d) = 4k, found by ascending enumeration over
/// d <= min(budget, 5^(k-1)). The cap always qualifies (r2(5^(k-1)) = 4k),
/// so the only failure mode is budget exhaustion, reported as budget_error.
int64_t curve_min(int64_t k, int64_t budget);

/// Constructive upper bound for curve_min(k): factor k = q1^a1 *** qm^am
/// with q1 > q2 > ... > qm, then assign exponent q1-1 to the a1 smallest
/// primes congruent to 1 mod 4, exponent q2-1 to the next a2, and so on.
/// The resulting product has r2 exactly 4k. Throws std::overflow_error if
/// it does not fit in 128 bits.
Count128 curve_min_constructive(int64_t k);

struct CurveMinBounds {
  int64_t k;
  Count128 constructive_upper;  // curve_min_constructive(k)
  Count128 simple_upper;        // 5^(k-1)
  Count128 primorial_lower;     // product of the first floor(log2 k) primes = 1 mod 4
};
CurveMinBounds curve_min_bounds(int64_t k);

/// First `count` primes congruent to 1 mod 4, ascending: 5, 13, 17, 29, ...
std::vector<int64_t> primes_1_mod_4(int count);

}  // namespace latdist::numtheory
