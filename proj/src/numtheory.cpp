#include "latdist/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace latdist::numtheory {

namespace {

// Smallest-prime-factor sieve backing factorize(). Built once, read-only
// afterwards; magic-static initialization keeps concurrent first calls safe.
constexpr int64_t kFactorSieveLimit = 1'000'000;

std::vector<int32_t> build_spf(int64_t limit) {
  std::vector<int32_t> spf(static_cast<size_t>(limit) + 1, 0);
  for (int64_t i = 2; i <= limit; ++i) {
    if (spf[static_cast<size_t>(i)] != 0) continue;
    for (int64_t j = i; j <= limit; j += i) {
      if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<int32_t>(i);
    }
  }
  return spf;
}

const std::vector<int32_t>& factor_sieve() {
  static const std::vector<int32_t> sieve = build_spf(kFactorSieveLimit);
  return sieve;
}

void push_factor(Factorization& out, int64_t prime, int exponent) {
  if (!out.empty() && out.back().prime == prime) {
    out.back().exponent += exponent;
  } else {
    out.push_back({prime, exponent});
  }
}

// r2 from an SPF walk over m, shared by r2_table.
int32_t r2_from_spf(int64_t m, const std::vector<int32_t>& spf) {
  int64_t product = 1;
  while (m > 1) {
    int64_t p = spf[static_cast<size_t>(m)];
    int exp = 0;
    while (m % p == 0) {
      m /= p;
      ++exp;
    }
    if (p % 4 == 1) {
      product *= exp + 1;
    } else if (p % 4 == 3 && exp % 2 != 0) {
      return 0;
    }
  }
  return static_cast<int32_t>(4 * product);
}

bool is_prime_small(int64_t n) {
  if (n < 2) return false;
  for (int64_t i = 2; i * i <= n; ++i) {
    if (n % i == 0) return false;
  }
  return true;
}

Count128 checked_pow(int64_t base, int64_t exp) {
  Count128 r = 1;
  for (int64_t i = 0; i < exp; ++i) r *= base;  // throws on 128-bit overflow
  return r;
}

}  // namespace

Factorization factorize(int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization out;
  int64_t m = n;
  // Trial-divide until the remainder fits the sieve, then walk SPF chains.
  for (int64_t p = 2; m > kFactorSieveLimit && p * p <= m; p = (p == 2 ? 3 : p + 2)) {
    if (m % p != 0) continue;
    int exp = 0;
    while (m % p == 0) {
      m /= p;
      ++exp;
    }
    push_factor(out, p, exp);
  }
  if (m > kFactorSieveLimit) {
    push_factor(out, m, 1);  // remainder is prime: no divisor up to sqrt
    return out;
  }
  const auto& spf = factor_sieve();
  while (m > 1) {
    int64_t p = spf[static_cast<size_t>(m)];
    int exp = 0;
    while (m % p == 0) {
      m /= p;
      ++exp;
    }
    push_factor(out, p, exp);
  }
  return out;
}

int64_t r2(int64_t d) {
  if (d < 1) throw std::invalid_argument("r2: d must be >= 1");
  int64_t product = 1;
  for (const auto& [prime, exponent] : factorize(d)) {
    if (prime % 4 == 1) {
      product *= exponent + 1;
    } else if (prime % 4 == 3 && exponent % 2 != 0) {
      return 0;
    }
  }
  return 4 * product;
}

std::vector<int32_t> r2_table(int64_t limit) {
  if (limit < 1) throw std::invalid_argument("r2_table: limit must be >= 1");
  // Two int32 arrays of this size; 1 << 27 keeps the sieve around a gigabyte.
  if (limit > (int64_t{1} << 27)) throw std::length_error("r2_table: limit too large for a sieve");
  auto spf = build_spf(limit);
  std::vector<int32_t> table(static_cast<size_t>(limit) + 1, 0);
  for (int64_t d = 1; d <= limit; ++d) {
    table[static_cast<size_t>(d)] = r2_from_spf(d, spf);
  }
  return table;
}

std::vector<Representation> representations(int64_t d) {
  if (d < 1) throw std::invalid_argument("representations: d must be >= 1");
  std::vector<Representation> out;
  for (int64_t a = 1; a * a <= d; ++a) {
    int64_t rest = d - a * a;
    int64_t b = isqrt64(rest);
    if (b * b == rest) out.push_back({a, b});
  }
  return out;
}

int64_t curve_min(int64_t k, int64_t budget) {
  if (k < 1) throw std::invalid_argument("curve_min: k must be >= 1");
  if (budget < 1) throw std::invalid_argument("curve_min: budget must be >= 1");

  // Enumeration cap: 5^(k-1) when it fits in int64, otherwise effectively
  // unbounded (the budget takes over).
  int64_t cap = std::numeric_limits<int64_t>::max();
  {
    Count128 pow5 = 1;
    bool fits = true;
    for (int64_t i = 1; i < k && fits; ++i) {
      pow5 *= 5;
      if (pow5 > std::numeric_limits<int64_t>::max()) fits = false;
    }
    if (fits) cap = pow5.convert_to<int64_t>();
  }
  const int64_t hi = std::min(budget, cap);
  const int64_t target = 4 * k;

  // Batch sieve for desk-scale ranges, per-d factorization beyond.
  // TODO: segment the sieve if budgets past 2^26 ever matter; the per-d
  // fallback is correct but quadratic-ish in wall time.
  constexpr int64_t kBatchLimit = int64_t{1} << 26;
  if (hi <= kBatchLimit) {
    auto table = r2_table(hi);
    for (int64_t d = 1; d <= hi; ++d) {
      if (table[static_cast<size_t>(d)] == target) return d;
    }
  } else {
    for (int64_t d = 1; d <= hi; ++d) {
      if (r2(d) == target) return d;
    }
  }
  // The cap value itself satisfies r2 = 4k, so reaching it means we found it.
  throw budget_error("curve_min: budget " + std::to_string(budget) +
                     " exhausted before reaching the smallest d with r2(d) = " +
                     std::to_string(target));
}

Count128 curve_min_constructive(int64_t k) {
  if (k < 1) throw std::invalid_argument("curve_min_constructive: k must be >= 1");
  Factorization fac = factorize(k);  // ascending primes
  int total_exponents = 0;
  for (const auto& pp : fac) total_exponents += pp.exponent;
  std::vector<int64_t> primes = primes_1_mod_4(total_exponents);

  Count128 result = 1;
  size_t next_prime = 0;
  // Largest factor prime gets the smallest primes from the 1 mod 4 list.
  for (auto it = fac.rbegin(); it != fac.rend(); ++it) {
    for (int i = 0; i < it->exponent; ++i) {
      result *= checked_pow(primes[next_prime++], it->prime - 1);
    }
  }
  return result;
}

CurveMinBounds curve_min_bounds(int64_t k) {
  if (k < 1) throw std::invalid_argument("curve_min_bounds: k must be >= 1");
  int floor_log2 = std::bit_width(static_cast<uint64_t>(k)) - 1;
  auto primes = primes_1_mod_4(floor_log2);
  Count128 primorial = 1;
  for (int64_t p : primes) primorial *= p;
  return CurveMinBounds{
      .k = k,
      .constructive_upper = curve_min_constructive(k),
      .simple_upper = checked_pow(5, k - 1),
      .primorial_lower = primorial,
  };
}

std::vector<int64_t> primes_1_mod_4(int count) {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(std::max(count, 0)));
  for (int64_t c = 5; static_cast<int>(out.size()) < count; c += 4) {
    if (is_prime_small(c)) out.push_back(c);
  }
  return out;
}

}  // namespace latdist::numtheory
