#pragma once

#include <cstdint>

#include "kunzkit/errors.hpp"

namespace kunzkit {

using Int = std::int64_t;

/// 64-bit addition that refuses to wrap.
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw validation_error("integer overflow in addition");
  return r;
}

/// 64-bit multiplication that refuses to wrap.
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw validation_error("integer overflow in multiplication");
  return r;
}

/// Binomial coefficient C(n, 2); the recurring count in presentation bounds.
inline Int choose2(Int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

} // namespace kunzkit
