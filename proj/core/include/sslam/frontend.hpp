#pragma once

#include <optional>
#include <vector>

#include "sslam/image.hpp"
#include "sslam/map.hpp"

namespace sslam {

struct DetectorState {
  int threshold = 20;
  int target_count = 700;
  double band = 0.2;
  int min_threshold = 5;
  int max_threshold = 100;
};

/// FAST-9 segment test on the 16-pixel radius-3 circle with 3x3
/// non-maximum suppression. Response is the arc sum of absolute
/// intensity differences. Descriptors are left unset.
std::vector<KeypointWD> detect_fast(const ImageU8& image, int threshold);

/// Raises or lowers the threshold by 2 when the detection count leaves
/// the band around the target, clamped to [min, max].
DetectorState adapt_threshold(DetectorState state, int detected_count);

/// Keeps only the highest-response keypoint per grid cell, ties broken
/// by lowest (r, c).
std::vector<KeypointWD> regularize_grid(const std::vector<KeypointWD>& keypoints,
                                        int bin_size, int width, int height);

/// 256-bit BRIEF over a 31x31 patch with 5x5 box pre-smoothing.
/// Empty when the keypoint is closer than 20 px to any border.
std::optional<Descriptor256> extract_brief(const ImageU8& image,
                                           const KeypointWD& keypoint);

}  // namespace sslam
