#pragma once

#include <limits>

#include "barrec/pfun.hpp"

namespace barrec {

// Natural-number arithmetic that saturates at the largest Nat instead of wrapping.

inline constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

inline Nat sat_add(Nat a, Nat b) { return a > kNatMax - b ? kNatMax : a + b; }

inline Nat sat_sub(Nat a, Nat b) { return a > b ? a - b : 0; }

inline Nat sat_mul(Nat a, Nat b) {
  if (a == 0 || b == 0) return 0;
  return a > kNatMax / b ? kNatMax : a * b;
}

/// 0^0 = 1
inline Nat sat_pow(Nat base, Nat exp) {
  Nat r = 1;
  while (exp > 0) {
    if (exp & 1) r = sat_mul(r, base);
    exp >>= 1;
    if (exp > 0) base = sat_mul(base, base);
  }
  return r;
}

}  // namespace barrec
