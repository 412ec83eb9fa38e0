#pragma once

#include <vector>

#include "sslam/frontend.hpp"
#include "sslam/image.hpp"
#include "sslam/map.hpp"

namespace sslam {

/// Single-pass epipolar matcher over row/column sorted keypoint lists.
/// Pairs the best right keypoint (Hamming distance < max_distance) with
/// strictly smaller column on the same row; after a match the right scan
/// resumes past the matched index, so matches are one-to-one and
/// column-monotone per row.
std::vector<std::pair<KeypointWD, KeypointWD>> match_stereo(
    std::vector<KeypointWD> left, std::vector<KeypointWD> right,
    int max_distance);

struct FrameBuildConfig {
  int stereo_max_distance = 25;  // bits
  int bin_size = 24;             // px, left-image regularization grid
};

/// Full triangulation stage: detect, regularize (left only), describe,
/// match, triangulate. Surviving pairs become framepoints with world
/// coordinates from the prior pose. The detector threshold adapts on the
/// left pre-regularization count. A frame with zero points is flagged
/// degenerate but still created.
Frame& build_frame(WorldMap& world, const ImageU8& left_image,
                   const ImageU8& right_image, const StereoRig& rig,
                   DetectorState& detector,
                   const Isometry3& prior_camera_to_world,
                   const FrameBuildConfig& config, double timestamp = 0);

}  // namespace sslam
