#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

// Prime-field arithmetic on 64-bit operands. All sketches draw their
// randomness from polynomial hash families over GF(p), so these helpers are
// the arithmetic floor of the whole library.

namespace pdsketch {

// (a * b) mod m without overflow for m < 2^63.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a %= m;
  b %= m;
  std::uint64_t s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t acc = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::uint64_t next_prime_at_least(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime(n)) {
    if (n > UINT64_MAX - 2) throw std::overflow_error("next_prime_at_least: out of range");
    n += 2;
  }
  return n;
}

// ceil(log2 x) for x >= 1; number of bits needed to index a set of size x.
inline unsigned ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::domain_error("ceil_log2: zero");
  return x == 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1));
}

// Smallest integer b with b^p >= n (integer p-th root, rounded up).
inline std::uint64_t ceil_root(std::uint64_t n, unsigned p) {
  if (p == 0) throw std::domain_error("ceil_root: zero exponent");
  if (n <= 1) return n;
  auto pow_ge = [&](std::uint64_t b) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < p; ++i) {
      acc *= b;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  std::uint64_t lo = 1, hi = 1;
  while (!pow_ge(hi)) hi *= 2;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_ge(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace pdsketch
