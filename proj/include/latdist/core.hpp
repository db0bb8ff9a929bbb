#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace latdist {

// All counting is exact. Rationals carry arbitrary-precision numerator and
// denominator; doubles appear only at export boundaries.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 128-bit integer that throws std::overflow_error instead of wrapping.
using Count128 = boost::multiprecision::checked_int128_t;

// An enumeration hit its configured budget before reaching the answer.
// Distinct from overflow and from invalid input.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact floor(sqrt(v)) for v >= 0.
inline int64_t isqrt64(int64_t v) {
  assert(v >= 0);
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && static_cast<__int128>(r) * r > v) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

// C(n, 2). Callers keep n small enough that this cannot overflow (n <= 2^32).
inline int64_t pairs_of(int64_t n) {
  assert(n >= 0);
  return n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
}

// Worker cap shared by all parallel paths; LATTICE_DIST_THREADS overrides.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("LATTICE_DIST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v < 1024) hw = std::min(hw, static_cast<int>(v));
  }
  return hw;
}

}  // namespace latdist
