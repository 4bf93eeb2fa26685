#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "pdsketch/field.hpp"

namespace pdsketch {

// Charges algorithm state in machine words of ceil(log2 max(n, m, d)) bits.
// Every persistent allocation an algorithm makes is routed through charge();
// peak_words is what the scaling experiments regress against.
class SpaceMeter {
 public:
  void charge(std::int64_t words) {
    if (words < 0 && current_ + words < 0) throw std::logic_error("SpaceMeter: negative balance");
    current_ += words;
    peak_ = std::max(peak_, current_);
  }

  std::int64_t current_words() const { return current_; }
  std::int64_t peak_words() const { return peak_; }

 private:
  std::int64_t current_ = 0;
  std::int64_t peak_ = 0;
};

// One accounting word, in bits, for an instance with the given dimensions.
inline unsigned word_bits(std::uint64_t n, std::uint64_t m, std::uint64_t d) {
  std::uint64_t top = std::max({n, m, d, std::uint64_t{2}});
  return ceil_log2(top);
}

// Words needed to hold values of magnitude <= bound under the instance word size.
inline std::int64_t words_for_magnitude(std::uint64_t bound, unsigned word_bits_count) {
  unsigned value_bits = ceil_log2(bound + 1) + 1;  // +1 for sign
  return static_cast<std::int64_t>((value_bits + word_bits_count - 1) / word_bits_count);
}

}  // namespace pdsketch
