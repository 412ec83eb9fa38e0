#pragma once

#include <optional>
#include <vector>

#include "sslam/image.hpp"
#include "sslam/map.hpp"
#include "sslam/pose_graph.hpp"

namespace sslam {

struct MapperConfig {
  int recovery_max_distance = 25;       // bits
  int min_track_for_landmark = 3;
  double map_translation_threshold = 5.0;  // m
  double map_rotation_threshold = 0.5;     // rad
  double measurement_sigma = 0.05;         // m at 1 m depth, scales with depth
};

/// Re-locates unmatched previous framepoints in the current left image
/// using the refined pose: a descriptor extracted at the rounded
/// projection is compared against the framepoint's stored left
/// descriptor; on agreement a new framepoint is created (right column
/// synthesized from the projected disparity) and linked into the track.
/// Returns the number of recovered points.
int recover_correspondences(WorldMap& world,
                            const std::vector<int>& prev_unmatched,
                            int prev_frame_id, Frame& curr_frame,
                            const ImageU8& curr_left_image,
                            const MapperConfig& config);

/// Creates a landmark for every framepoint whose track reached
/// min_track_for_landmark and has none yet; the reference is propagated
/// along the whole track and the filter is seeded from the current
/// world-frame measurement. Returns the new landmark ids.
std::vector<int> promote_landmarks(WorldMap& world, Frame& curr_frame,
                                   const MapperConfig& config);

/// Running information filter step with isotropic noise scaling linearly
/// in depth: omega += W, nu += W * measurement, position = omega^-1 * nu.
void update_landmark_filter(Landmark& landmark,
                            const Eigen::Vector3d& p_w_measured, double depth,
                            const MapperConfig& config);

/// Creates a local map from the pending frames once translation or
/// rotation relative to the previous local map exceeds its threshold.
/// Registers a pose-graph node and an odometry edge to the previous one.
/// Returns the new local map id, or nothing when the thresholds are
/// unmet.
std::optional<int> maybe_create_local_map(WorldMap& world, PoseGraph& graph,
                                          const MapperConfig& config);

}  // namespace sslam
