#include "sslam/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sslam/brief_pattern.hpp"

namespace sslam {

namespace {

// 16-pixel Bresenham circle of radius 3, (dr, dc), clockwise from top.
constexpr int kCircle[16][2] = {
    {-3, 0}, {-3, 1}, {-2, 2}, {-1, 3}, {0, 3}, {1, 3}, {2, 2}, {3, 1},
    {3, 0},  {3, -1}, {2, -2}, {1, -3}, {0, -3}, {-1, -3}, {-2, -2}, {-3, -1}};

constexpr int kArcLength = 9;  // FAST-9
constexpr int kBorder = 3;

// Longest circular run of set flags; ties resolved by larger diff sum.
// Returns the response (diff sum over the winning arc) or -1 if no run
// reaches the required length.
float best_arc_response(const bool flags[16], const int abs_diff[16]) {
  int best_len = 0;
  int best_sum = -1;
  int run_len = 0;
  int run_sum = 0;
  for (int i = 0; i < 32; ++i) {
    const int j = i & 15;
    if (flags[j]) {
      if (run_len < 16) {
        ++run_len;
        run_sum += abs_diff[j];
      }
      if (run_len > best_len || (run_len == best_len && run_sum > best_sum)) {
        best_len = run_len;
        best_sum = run_sum;
      }
    } else {
      run_len = 0;
      run_sum = 0;
    }
  }
  if (best_len < kArcLength) {
    return -1.0f;
  }
  return static_cast<float>(best_sum);
}

float segment_test(const ImageU8& image, int r, int c, int threshold) {
  const int center = image.at(r, c);

  // compass pre-test: an arc of 9 always covers two of the four poles
  int brighter_poles = 0;
  int darker_poles = 0;
  for (int i = 0; i < 16; i += 4) {
    const int value = image.at(r + kCircle[i][0], c + kCircle[i][1]);
    if (value > center + threshold) ++brighter_poles;
    if (value < center - threshold) ++darker_poles;
  }
  if (brighter_poles < 2 && darker_poles < 2) {
    return -1.0f;
  }

  bool brighter[16];
  bool darker[16];
  int abs_diff[16];
  for (int i = 0; i < 16; ++i) {
    const int value = image.at(r + kCircle[i][0], c + kCircle[i][1]);
    const int diff = value - center;
    brighter[i] = diff > threshold;
    darker[i] = diff < -threshold;
    abs_diff[i] = std::abs(diff);
  }

  const float response_bright = best_arc_response(brighter, abs_diff);
  const float response_dark = best_arc_response(darker, abs_diff);
  return std::max(response_bright, response_dark);
}

}  // namespace

std::vector<KeypointWD> detect_fast(const ImageU8& image, int threshold) {
  std::vector<KeypointWD> candidates;
  if (image.width < 7 || image.height < 7) {
    return candidates;
  }
  for (int r = kBorder; r < image.height - kBorder; ++r) {
    for (int c = kBorder; c < image.width - kBorder; ++c) {
      const float response = segment_test(image, r, c, threshold);
      if (response >= 0.0f) {
        candidates.push_back(KeypointWD{r, c, response, {}});
      }
    }
  }

  // 3x3 non-maximum suppression, ties kept at the lowest (r, c)
  std::unordered_map<std::int64_t, float> response_map;
  response_map.reserve(candidates.size());
  const auto key = [&](int r, int c) {
    return static_cast<std::int64_t>(r) * image.width + c;
  };
  for (const auto& kp : candidates) {
    response_map[key(kp.r, kp.c)] = kp.response;
  }

  std::vector<KeypointWD> keypoints;
  for (const auto& kp : candidates) {
    bool is_max = true;
    for (int dr = -1; dr <= 1 && is_max; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const auto it = response_map.find(key(kp.r + dr, kp.c + dc));
        if (it == response_map.end()) continue;
        if (it->second > kp.response ||
            (it->second == kp.response &&
             std::make_pair(kp.r + dr, kp.c + dc) < std::make_pair(kp.r, kp.c))) {
          is_max = false;
          break;
        }
      }
    }
    if (is_max) {
      keypoints.push_back(kp);
    }
  }
  return keypoints;
}

DetectorState adapt_threshold(DetectorState state, int detected_count) {
  const double target = state.target_count;
  if (detected_count > target * (1.0 + state.band)) {
    state.threshold += 2;
  } else if (detected_count < target * (1.0 - state.band)) {
    state.threshold -= 2;
  }
  state.threshold =
      std::clamp(state.threshold, state.min_threshold, state.max_threshold);
  return state;
}

std::vector<KeypointWD> regularize_grid(const std::vector<KeypointWD>& keypoints,
                                        int bin_size, int width, int height) {
  const int cols = (width + bin_size - 1) / bin_size;
  const int rows = (height + bin_size - 1) / bin_size;
  std::vector<int> best(static_cast<std::size_t>(cols) * rows, -1);

  for (int i = 0; i < static_cast<int>(keypoints.size()); ++i) {
    const auto& kp = keypoints[i];
    const int cell = (kp.r / bin_size) * cols + kp.c / bin_size;
    int& slot = best[cell];
    if (slot < 0) {
      slot = i;
      continue;
    }
    const auto& held = keypoints[slot];
    if (kp.response > held.response ||
        (kp.response == held.response &&
         std::make_pair(kp.r, kp.c) < std::make_pair(held.r, held.c))) {
      slot = i;
    }
  }

  std::vector<KeypointWD> kept;
  for (int index : best) {
    if (index >= 0) {
      kept.push_back(keypoints[index]);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.r, a.c) < std::make_pair(b.r, b.c);
  });
  return kept;
}

std::optional<Descriptor256> extract_brief(const ImageU8& image,
                                           const KeypointWD& keypoint) {
  constexpr int kMargin = 20;
  if (keypoint.r < kMargin || keypoint.c < kMargin ||
      keypoint.r >= image.height - kMargin || keypoint.c >= image.width - kMargin) {
    return std::nullopt;
  }

  // unnormalized 5x5 box sum, scale cancels in the comparisons
  const auto smoothed = [&](int r, int c) {
    int sum = 0;
    for (int dr = -2; dr <= 2; ++dr) {
      for (int dc = -2; dc <= 2; ++dc) {
        sum += image.at(r + dr, c + dc);
      }
    }
    return sum;
  };

  Descriptor256 descriptor;
  for (int i = 0; i < 256; ++i) {
    const BriefPair& pair = kBriefPattern[i];
    const int a = smoothed(keypoint.r + pair.dr_a, keypoint.c + pair.dc_a);
    const int b = smoothed(keypoint.r + pair.dr_b, keypoint.c + pair.dc_b);
    if (a < b) {
      descriptor.set_bit(i);
    }
  }
  return descriptor;
}

}  // namespace sslam
