#pragma once

#include <cstdint>
#include <vector>

#include "pdsketch/entropy.hpp"
#include "pdsketch/field.hpp"

// t-wise independent hash families: uniformly random degree-(t-1) polynomials
// over GF(p), evaluated by Horner and reduced mod the range size. Over the
// full coefficient family the joint distribution on any t distinct inputs is
// exactly uniform over field-value tuples; the final mod-d reduction adds a
// bias of at most 1/p per value.

namespace pdsketch {

struct HashFamilySpec {
  std::uint64_t universe_size = 0;  // domain [0, n)
  std::uint64_t range_size = 0;     // range  [0, d)
  unsigned independence = 0;        // t
  std::uint64_t prime = 0;          // p, prime, >= max(n, d)

  HashFamilySpec() = default;
  HashFamilySpec(std::uint64_t n, std::uint64_t d, unsigned t, std::uint64_t p)
      : universe_size(n), range_size(d), independence(t), prime(p) {
    validate();
  }

  // Picks the smallest admissible prime.
  static HashFamilySpec make(std::uint64_t n, std::uint64_t d, unsigned t) {
    std::uint64_t lo = n > d ? n : d;
    if (lo < 2) lo = 2;
    return HashFamilySpec(n, d, t, next_prime_at_least(lo));
  }

  void validate() const {
    if (universe_size == 0 || range_size == 0) throw std::invalid_argument("hash family: empty domain or range");
    if (independence == 0) throw std::invalid_argument("hash family: independence must be >= 1");
    if (!is_prime(prime)) throw std::invalid_argument("hash family: modulus is not prime");
    if (prime < universe_size || prime < range_size) throw std::invalid_argument("hash family: prime too small");
    if (prime >= (1ull << 62)) throw std::invalid_argument("hash family: prime too large");
  }

  unsigned bits_per_coefficient() const { return ceil_log2(prime); }

  bool operator==(const HashFamilySpec&) const = default;
};

class HashFunction {
 public:
  HashFunction(HashFamilySpec spec, std::vector<std::uint64_t> coefficients)
      : spec_(spec), coeff_(std::move(coefficients)) {
    spec_.validate();
    if (coeff_.size() != spec_.independence) throw std::invalid_argument("hash function: wrong coefficient count");
    for (std::uint64_t c : coeff_) {
      if (c >= spec_.prime) throw std::invalid_argument("hash function: coefficient outside field");
    }
  }

  // Horner: ((c_{t-1} x + c_{t-2}) x + ...) + c_0, then mod d.
  std::uint64_t operator()(std::uint64_t x) const {
    if (x >= spec_.universe_size) throw std::domain_error("hash eval: input outside universe");
    std::uint64_t acc = 0;
    for (std::size_t i = coeff_.size(); i-- > 0;) {
      acc = (mul_mod(acc, x, spec_.prime) + coeff_[i]) % spec_.prime;
    }
    return acc % spec_.range_size;
  }

  // Field value before range reduction; exactly t-wise uniform.
  std::uint64_t field_value(std::uint64_t x) const {
    if (x >= spec_.universe_size) throw std::domain_error("hash eval: input outside universe");
    std::uint64_t acc = 0;
    for (std::size_t i = coeff_.size(); i-- > 0;) {
      acc = (mul_mod(acc, x, spec_.prime) + coeff_[i]) % spec_.prime;
    }
    return acc;
  }

  const HashFamilySpec& spec() const { return spec_; }
  const std::vector<std::uint64_t>& coefficients() const { return coeff_; }

 private:
  HashFamilySpec spec_;
  std::vector<std::uint64_t> coeff_;
};

// Consumes exactly independence * ceil(log2 p) bits.
inline HashFunction sample_hash(const HashFamilySpec& spec, BitSource& entropy) {
  spec.validate();
  std::vector<std::uint64_t> coeff(spec.independence);
  unsigned bits = spec.bits_per_coefficient();
  for (auto& c : coeff) c = entropy.next_bits(bits) % spec.prime;
  return HashFunction(spec, std::move(coeff));
}

// t-wise independent map [n] -> {+1, -1}: a hash into [2] with 0 -> +1,
// 1 -> -1.
class SignHash {
 public:
  explicit SignHash(HashFunction h) : h_(std::move(h)) {
    if (h_.spec().range_size != 2) throw std::invalid_argument("sign hash: range must be 2");
  }

  int operator()(std::uint64_t x) const { return h_(x) == 0 ? +1 : -1; }

  const HashFunction& base() const { return h_; }

 private:
  HashFunction h_;
};

inline SignHash sample_sign_hash(std::uint64_t universe_size, unsigned independence, BitSource& entropy) {
  if (independence < 2) throw std::invalid_argument("sign hash: independence must be >= 2");
  return SignHash(sample_hash(HashFamilySpec::make(universe_size, 2, independence), entropy));
}

}  // namespace pdsketch
