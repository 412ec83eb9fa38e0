#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace sslam {

// 256-bit binary descriptor, bit i at word i/64, bit position i%64.
struct Descriptor256 {
  std::array<std::uint64_t, 4> words{};

  bool operator==(const Descriptor256&) const = default;

  bool bit(int index) const {
    return (words[index >> 6] >> (index & 63)) & 1u;
  }
  void set_bit(int index) {
    words[index >> 6] |= std::uint64_t{1} << (index & 63);
  }
};

inline int hamming_distance(const Descriptor256& a, const Descriptor256& b) {
  int distance = 0;
  for (int i = 0; i < 4; ++i) {
    distance += std::popcount(a.words[i] ^ b.words[i]);
  }
  return distance;
}

}  // namespace sslam
