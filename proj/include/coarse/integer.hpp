#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coarse {

/// Exact integer used for every coordinate, distance and count.
///
/// Arithmetic that can leave the 64-bit range goes through the checked
/// helpers below, which throw instead of wrapping. No floating point is used
/// anywhere in the library.
using Int = std::int64_t;

inline constexpr Int kInfinity = std::numeric_limits<Int>::max();

inline Int checked_add(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return out;
}

inline Int checked_sub(Int a, Int b) {
  Int out = 0;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in subtraction");
  }
  return out;
}

inline Int checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return out;
}

inline Int pow2(Int exponent) {
  if (exponent < 0 || exponent > 62) {
    throw std::overflow_error("2^" + std::to_string(exponent) + " does not fit in 64 bits");
  }
  return Int{1} << exponent;
}

// Floor division and the matching nonnegative residue (for positive divisors).
inline constexpr Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

inline constexpr Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

inline constexpr Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline constexpr Int abs_diff(Int a, Int b) { return a > b ? a - b : b - a; }

/// l + (l+1) + ... + (k-1) for l <= k, i.e. the level penalty between tower levels.
inline Int level_penalty_sum(Int l, Int k) {
  if (l > k) {
    return level_penalty_sum(k, l);
  }
  // (k-1)k/2 - (l-1)l/2, computed without intermediate overflow for sane levels.
  return checked_sub(checked_mul(k - 1, k) / 2, checked_mul(l - 1, l) / 2);
}

/// Inclusive integer interval.
struct Interval {
  Int lo = 0;
  Int hi = -1;

  [[nodiscard]] constexpr bool empty() const { return lo > hi; }
  [[nodiscard]] constexpr bool contains(Int v) const { return lo <= v && v <= hi; }
  [[nodiscard]] constexpr Int length() const { return empty() ? 0 : hi - lo + 1; }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace coarse
