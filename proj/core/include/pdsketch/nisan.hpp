#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pdsketch/entropy.hpp"
#include "pdsketch/field.hpp"

// Nisan's pseudorandom generator for space-bounded computation, in the
// recursive-composition form
//
//   G_0(x) = x                    (s bits)
//   G_j(x) = G_{j-1}(x) || G_{j-1}(h_j(x))
//
// where each h_j : {0,1}^s -> {0,1}^s is described by one s-bit constant a_j
// and acts as multiplication by a_j in GF(2^s) (an XOR-universal family).
// The seed is s * ceil(log2 r) bits: a base block plus one constant per
// level. Any output bit is computed by walking the composition path for its
// index, so the generator is coordinate-addressable without materializing
// all r bits.

namespace pdsketch {

// Smallest irreducible polynomial of degree s over GF(2), with the leading
// bit set (bit s). Cached; thread-safe.
std::uint64_t gf2_irreducible(unsigned degree);

// a * b mod f in GF(2^s); f must have degree s, operands degree < s.
std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, unsigned degree, std::uint64_t f);

struct PrgSpec {
  unsigned space_param = 0;        // s
  std::uint64_t output_length = 0; // r

  PrgSpec() = default;
  PrgSpec(unsigned s, std::uint64_t r) : space_param(s), output_length(r) { validate(); }

  void validate() const;

  unsigned levels() const { return ceil_log2(output_length) - 1; }
  std::uint64_t seed_bits() const { return static_cast<std::uint64_t>(space_param) * ceil_log2(output_length); }

  bool operator==(const PrgSpec&) const = default;
};

class PrgSeed {
 public:
  // blocks[0] is the base block, blocks[j] (j >= 1) the level-j hash
  // constant; each holds space_param bits.
  PrgSeed(PrgSpec spec, std::vector<std::uint64_t> blocks);

  static PrgSeed sample(const PrgSpec& spec, BitSource& entropy);

  const PrgSpec& spec() const { return spec_; }
  const std::vector<std::uint64_t>& blocks() const { return blocks_; }
  std::uint64_t modulus_poly() const { return poly_; }

 private:
  PrgSpec spec_;
  std::vector<std::uint64_t> blocks_;
  std::uint64_t poly_;
};

// Bit `index` of G(seed); pure function of (seed, index).
bool prg_bit(const PrgSeed& seed, std::uint64_t index);

// Random-access reader with a per-block memo of walked states. The memo
// holds at most one word per distinct s-bit output block touched, so a
// consumer reading g groups keeps O(g) extra words.
class PrgEvaluator {
 public:
  explicit PrgEvaluator(PrgSeed seed) : seed_(std::move(seed)) {}

  bool bit(std::uint64_t index);

  // Little-endian group of `count` consecutive bits starting at `start`.
  std::uint64_t bits_at(std::uint64_t start, unsigned count);

  const PrgSeed& seed() const { return seed_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::uint64_t block_state(std::uint64_t block);

  PrgSeed seed_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace pdsketch
