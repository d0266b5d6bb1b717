#ifndef WORDMAP_ARITH_HPP
#define WORDMAP_ARITH_HPP

// Checked integer helpers shared by every module. Overflow throws
// OverflowError; there is no silent wraparound anywhere.

#include <cstdint>
#include <numeric>

#include "wordmap/errors.hpp"

namespace wordmap {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

/// base^exp for exp >= 0, throwing on overflow.
inline std::int64_t checked_pow(std::int64_t base, int exp) {
  if (exp < 0) throw OverflowError("negative exponent in checked_pow");
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

/// Canonical residue in [0, modulus).
inline std::int64_t mod(std::int64_t x, std::int64_t modulus) {
  std::int64_t r = x % modulus;
  return r < 0 ? r + modulus : r;
}

inline std::int64_t mod(__int128 x, std::int64_t modulus) {
  auto r = static_cast<std::int64_t>(x % modulus);
  return r < 0 ? r + modulus : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t modulus) {
  return mod(static_cast<__int128>(a) * b, modulus);
}

/// base^exp mod modulus for exp >= 0.
inline std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t modulus) {
  std::int64_t result = 1 % modulus;
  std::int64_t b = mod(base, modulus);
  while (exp > 0) {
    if (exp & 1u) result = mulmod(result, b, modulus);
    b = mulmod(b, b, modulus);
    exp >>= 1u;
  }
  return result;
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace wordmap

#endif  // WORDMAP_ARITH_HPP
