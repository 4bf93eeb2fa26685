#include "pdsketch/nisan.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace pdsketch {

namespace {

unsigned gf2_degree(unsigned __int128 p) {
  unsigned d = 0;
  while (p > 1) {
    p >>= 1;
    ++d;
  }
  return d;
}

// Remainder of a mod b over GF(2); b != 0.
std::uint64_t gf2_rem(unsigned __int128 a, std::uint64_t b) {
  unsigned db = gf2_degree(b);
  while (a >> db != 0) {
    unsigned da = gf2_degree(a);
    a ^= static_cast<unsigned __int128>(b) << (da - db);
  }
  return static_cast<std::uint64_t>(a);
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t r = gf2_rem(a, b);
    a = b;
    b = r;
  }
  return a;
}

std::uint64_t gf2_mul_raw(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
  unsigned __int128 prod = 0;
  while (b != 0) {
    unsigned tz = static_cast<unsigned>(__builtin_ctzll(b));
    prod ^= static_cast<unsigned __int128>(a) << tz;
    b &= b - 1;
  }
  return gf2_rem(prod, f);
}

// x^(2^k) mod f by repeated squaring of the residue.
std::uint64_t gf2_x_pow_pow2(unsigned k, std::uint64_t f) {
  std::uint64_t x = gf2_rem(2, f);  // the polynomial "x"
  for (unsigned i = 0; i < k; ++i) x = gf2_mul_raw(x, x, f);
  return x;
}

// Rabin's test: f of degree s is irreducible iff x^(2^s) == x (mod f) and
// gcd(x^(2^(s/q)) - x, f) = 1 for every prime q dividing s.
bool gf2_irreducible_test(std::uint64_t f, unsigned s) {
  if (gf2_x_pow_pow2(s, f) != gf2_rem(2, f)) return false;
  unsigned rest = s;
  for (unsigned q = 2; q * q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    std::uint64_t g = gf2_gcd(gf2_x_pow_pow2(s / q, f) ^ gf2_rem(2, f), f);
    if (g != 1) return false;
  }
  if (rest > 1) {
    std::uint64_t g = gf2_gcd(gf2_x_pow_pow2(s / rest, f) ^ gf2_rem(2, f), f);
    if (g != 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t gf2_irreducible(unsigned degree) {
  if (degree == 0 || degree > 60) throw std::domain_error("gf2_irreducible: degree must be in [1,60]");
  static std::map<unsigned, std::uint64_t> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;
  std::uint64_t high = 1ull << degree;
  // constant term must be 1, otherwise x divides f
  for (std::uint64_t low = 1;; low += 2) {
    if (low >= high && degree > 1) throw std::logic_error("gf2_irreducible: search exhausted");
    std::uint64_t f = high | low;
    if (gf2_irreducible_test(f, degree)) {
      cache[degree] = f;
      return f;
    }
  }
}

std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, unsigned degree, std::uint64_t f) {
  if (degree == 0 || f >> degree != 1) throw std::invalid_argument("gf2_mul: bad modulus");
  return gf2_mul_raw(a, b, f);
}

void PrgSpec::validate() const {
  if (space_param == 0 || space_param > 60) throw std::invalid_argument("prg: space parameter must be in [1,60]");
  if (output_length < 2 || output_length > (1ull << 40)) {
    throw std::invalid_argument("prg: output length must be in [2, 2^40]");
  }
  // Base block expands by 2^levels; the seed layout must cover the request.
  unsigned lv = ceil_log2(output_length) - 1;
  if (lv >= 63 || (static_cast<unsigned __int128>(space_param) << lv) < output_length) {
    throw std::invalid_argument("prg: space parameter too small for output length");
  }
}

PrgSeed::PrgSeed(PrgSpec spec, std::vector<std::uint64_t> blocks) : spec_(spec), blocks_(std::move(blocks)) {
  spec_.validate();
  if (blocks_.size() != spec_.levels() + 1) throw std::invalid_argument("prg seed: wrong block count");
  for (std::uint64_t b : blocks_) {
    if (spec_.space_param < 64 && (b >> spec_.space_param) != 0) {
      throw std::invalid_argument("prg seed: block exceeds space parameter");
    }
  }
  poly_ = gf2_irreducible(spec_.space_param);
}

PrgSeed PrgSeed::sample(const PrgSpec& spec, BitSource& entropy) {
  spec.validate();
  std::vector<std::uint64_t> blocks(spec.levels() + 1);
  for (auto& b : blocks) b = entropy.next_bits(spec.space_param);
  return PrgSeed(spec, std::move(blocks));
}

namespace {

// State reached by applying the level hashes selected by `block`'s binary
// digits, top level first.
std::uint64_t walk(const PrgSeed& seed, std::uint64_t block) {
  const PrgSpec& spec = seed.spec();
  std::uint64_t x = seed.blocks()[0];
  for (unsigned j = spec.levels(); j >= 1; --j) {
    std::uint64_t half = 1ull << (j - 1);
    if (block >= half) {
      x = gf2_mul(seed.blocks()[j], x, spec.space_param, seed.modulus_poly());
      block -= half;
    }
  }
  return x;
}

}  // namespace

bool prg_bit(const PrgSeed& seed, std::uint64_t index) {
  if (index >= seed.spec().output_length) throw std::domain_error("prg_bit: index out of range");
  std::uint64_t s = seed.spec().space_param;
  std::uint64_t x = walk(seed, index / s);
  return (x >> (index % s)) & 1;
}

std::uint64_t PrgEvaluator::block_state(std::uint64_t block) {
  auto it = memo_.find(block);
  if (it != memo_.end()) return it->second;
  std::uint64_t x = walk(seed_, block);
  memo_.emplace(block, x);
  return x;
}

bool PrgEvaluator::bit(std::uint64_t index) {
  if (index >= seed_.spec().output_length) throw std::domain_error("prg_bit: index out of range");
  std::uint64_t s = seed_.spec().space_param;
  return (block_state(index / s) >> (index % s)) & 1;
}

std::uint64_t PrgEvaluator::bits_at(std::uint64_t start, unsigned count) {
  if (count == 0 || count > 64) throw std::domain_error("PrgEvaluator::bits_at: count must be in [1,64]");
  std::uint64_t out = 0;
  for (unsigned k = 0; k < count; ++k) {
    if (bit(start + k)) out |= 1ull << k;
  }
  return out;
}

}  // namespace pdsketch
