#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace sslam {

// Row-major 8-bit grayscale image.
struct ImageU8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  ImageU8() = default;
  ImageU8(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int r, int c) const {
    assert(r >= 0 && r < height && c >= 0 && c < width);
    return data[static_cast<std::size_t>(r) * width + c];
  }
  std::uint8_t& at(int r, int c) {
    assert(r >= 0 && r < height && c >= 0 && c < width);
    return data[static_cast<std::size_t>(r) * width + c];
  }
  bool empty() const { return data.empty(); }
};

}  // namespace sslam
