#pragma once

#include <array>
#include <cstdint>

namespace sslam {

struct BriefPair {
  std::int8_t dr_a, dc_a, dr_b, dc_b;
};

extern const std::array<BriefPair, 256> kBriefPattern;

}  // namespace sslam
