#pragma once

#include <optional>
#include <vector>

#include "sslam/map.hpp"

namespace sslam {

struct TrackerConfig {
  int search_half_width = 25;        // px
  int search_half_height = 25;       // px
  int match_max_distance = 25;       // bits
  int iterations = 10;
  double kernel_maximum_error = 100; // squared px over the 4-D residual
  double close_depth = 15;           // m
  double maximum_depth = 75;         // m
  double landmark_weight = 1.5;
  int min_inliers = 15;
};

/// Constant velocity motion model. Without a second-to-last pose the
/// prior assumes no motion.
Isometry3 predict_motion(const Isometry3& pose_prev,
                         const std::optional<Isometry3>& pose_prevprev);

struct ProjectionMatches {
  // (previous-frame point index, current keypoint index)
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched;  // previous-frame point indices
};

/// Projects previous framepoints (landmark positions preferred) through
/// the prior into the current left image and greedily assigns each to the
/// minimum-distance current keypoint inside the search rectangle. Each
/// current keypoint is used at most once.
ProjectionMatches match_projections(const WorldMap& world,
                                    const Frame& prev_frame,
                                    const std::vector<KeypointWD>& curr_keypoints,
                                    const Isometry3& prior_world_to_camera,
                                    const TrackerConfig& config);

struct PoseResult {
  Isometry3 world_to_camera = Isometry3::Identity();
  int inliers = 0;
  bool reliable = false;
};

/// Damped Gauss-Newton pose refinement over the 4-D stereo reprojection
/// residual of all track-linked framepoints. Runs exactly
/// config.iterations steps and sets the per-point inlier flags from the
/// final iteration.
PoseResult optimize_pose(WorldMap& world, Frame& frame,
                         const Isometry3& prior_world_to_camera,
                         const TrackerConfig& config);

}  // namespace sslam
