#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

// Counter-mode entropy. A single master seed (the CLI's --seed hex string)
// fans out to every randomness consumer through domain-separation tags:
//
//   derive_key(master, "stream-gen")        stream generators
//   derive_key(master, "trial", i)          per-trial algorithm entropy
//
// Each derived key seeds a BitSource, a sequential bit stream backed by
// splitmix64 blocks. Consumers draw bits in a documented order, so a trial's
// behaviour is a pure function of (master seed, trial index).

namespace pdsketch {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t derive_key(std::uint64_t master, std::string_view tag) {
  std::uint64_t s = master ^ fnv1a64(tag);
  return splitmix64(s);
}

inline std::uint64_t derive_key(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  std::uint64_t s = derive_key(master, tag) ^ (0xd1342543de82ef95ull * (index + 1));
  return splitmix64(s);
}

class BitSource {
 public:
  explicit BitSource(std::uint64_t key) : state_(key) {}

  BitSource(std::uint64_t master, std::string_view tag) : BitSource(derive_key(master, tag)) {}

  bool next_bit() { return (next_bits(1) & 1) != 0; }

  // Little-endian: the first bit drawn is the least significant of the result.
  std::uint64_t next_bits(unsigned count) {
    if (count == 0 || count > 64) throw std::domain_error("BitSource::next_bits: count must be in [1,64]");
    std::uint64_t out = 0;
    unsigned got = 0;
    while (got < count) {
      if (avail_ == 0) {
        buf_ = splitmix64(state_);
        avail_ = 64;
      }
      unsigned take = count - got < avail_ ? count - got : avail_;
      std::uint64_t mask = take == 64 ? ~0ull : ((1ull << take) - 1);
      out |= (buf_ & mask) << got;
      buf_ >>= take == 64 ? 0 : take;
      if (take == 64) buf_ = 0;
      avail_ -= take;
      got += take;
    }
    consumed_ += count;
    return out;
  }

  // Uniform value in [0, bound) by drawing ceil(log2 bound) bits and reducing
  // mod bound; the <= 1/bound reduction bias is accepted library-wide.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("BitSource::next_below: zero bound");
    if (bound == 1) return 0;
    unsigned bits = static_cast<unsigned>(std::bit_width(bound - 1));
    return next_bits(bits) % bound;
  }

  std::uint64_t bits_consumed() const { return consumed_; }

 private:
  std::uint64_t state_;
  std::uint64_t buf_ = 0;
  unsigned avail_ = 0;
  std::uint64_t consumed_ = 0;
};

// CLI seeds are lowercase hex, at most 16 digits.
inline std::uint64_t parse_seed_hex(std::string_view hex) {
  if (hex.empty() || hex.size() > 16) throw std::invalid_argument("seed must be 1..16 hex digits");
  std::uint64_t v = 0;
  for (char c : hex) {
    v <<= 4;
    if (c >= '0' && c <= '9') {
      v |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else {
      throw std::invalid_argument("seed must be lowercase hex");
    }
  }
  return v;
}

inline std::string seed_to_hex(std::uint64_t seed) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[seed & 0xf]);
    seed >>= 4;
  } while (seed != 0);
  return s;
}

}  // namespace pdsketch
