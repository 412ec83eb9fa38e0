#include "sslam/tracker.hpp"

#include <cmath>

namespace sslam {

Isometry3 predict_motion(const Isometry3& pose_prev,
                         const std::optional<Isometry3>& pose_prevprev) {
  if (!pose_prevprev) {
    return pose_prev;
  }
  const Isometry3 motion = pose_prev * pose_prevprev->inverse();
  return motion * pose_prev;
}

ProjectionMatches match_projections(const WorldMap& world,
                                    const Frame& prev_frame,
                                    const std::vector<KeypointWD>& curr_keypoints,
                                    const Isometry3& prior_world_to_camera,
                                    const TrackerConfig& config) {
  ProjectionMatches result;
  const Camera& cam = prev_frame.rig->cam_left;
  std::vector<bool> taken(curr_keypoints.size(), false);

  for (int prev_index = 0; prev_index < static_cast<int>(prev_frame.points.size());
       ++prev_index) {
    const Framepoint& point = prev_frame.points[prev_index];
    const Eigen::Vector3d p_w = point.landmark_id >= 0
                                    ? world.landmark(point.landmark_id).p_w
                                    : point.p_w;
    const auto projection = project(prior_world_to_camera * p_w, cam);
    if (!projection || !projection->in_view) {
      result.unmatched.push_back(prev_index);
      continue;
    }

    int best_index = -1;
    int best_distance = config.match_max_distance;
    for (int i = 0; i < static_cast<int>(curr_keypoints.size()); ++i) {
      if (taken[i]) continue;
      const KeypointWD& kp = curr_keypoints[i];
      if (std::abs(kp.c - projection->px.c) > config.search_half_width ||
          std::abs(kp.r - projection->px.r) > config.search_half_height) {
        continue;
      }
      const int distance = hamming_distance(point.k_left.d, kp.d);
      if (distance < best_distance) {
        best_distance = distance;
        best_index = i;
      }
    }
    if (best_index >= 0) {
      taken[best_index] = true;
      result.matches.emplace_back(prev_index, best_index);
    } else {
      result.unmatched.push_back(prev_index);
    }
  }
  return result;
}

PoseResult optimize_pose(WorldMap& world, Frame& frame,
                         const Isometry3& prior_world_to_camera,
                         const TrackerConfig& config) {
  const StereoRig& rig = *frame.rig;
  PoseResult result;
  result.world_to_camera = prior_world_to_camera;

  for (int iteration = 0; iteration < config.iterations; ++iteration) {
    Eigen::Matrix<double, 6, 6> H = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();

    for (Framepoint& point : frame.points) {
      if (!point.prev.valid()) continue;
      point.inlier = false;

      const Eigen::Vector3d p_ref =
          point.landmark_id >= 0 ? world.landmark(point.landmark_id).p_w
                                 : world.resolve(point.prev).p_w;
      const Eigen::Vector3d p_c = result.world_to_camera * p_ref;
      if (p_c.z() <= 0 || p_c.z() >= config.maximum_depth) continue;

      const auto proj_left = project(p_c, rig.cam_left);
      const auto proj_right = project(p_c, rig.cam_right);
      if (!proj_left || !proj_right) continue;

      Eigen::Vector4d error(proj_left->px.c - point.meas_left.c,
                            proj_left->px.r - point.meas_left.r,
                            proj_right->px.c - point.meas_right.c,
                            proj_right->px.r - point.meas_right.r);

      Eigen::Matrix4d omega = Eigen::Matrix4d::Identity();
      if (point.landmark_id >= 0) {
        omega *= config.landmark_weight;
      }
      const double error_squared = error.squaredNorm();
      if (error_squared > config.kernel_maximum_error) {
        omega *= config.kernel_maximum_error / error_squared;
      } else {
        point.inlier = true;
      }

      Matrix4x6 jacobian = stereo_jacobian(result.world_to_camera, p_c, rig);
      if (p_c.z() < config.close_depth) {
        omega *= (config.close_depth - p_c.z()) / config.close_depth;
      } else {
        omega *= (config.maximum_depth - p_c.z()) / config.maximum_depth;
        // far point: no contribution to the translational block
        jacobian.block<4, 3>(0, 0).setZero();
      }

      H += jacobian.transpose() * omega * jacobian;
      b += jacobian.transpose() * omega * error;
    }

    const TwistVector dx =
        (H + Eigen::Matrix<double, 6, 6>::Identity()).ldlt().solve(-b);
    result.world_to_camera = pose_perturbation(dx) * result.world_to_camera;
  }

  result.inliers = 0;
  for (const Framepoint& point : frame.points) {
    if (point.inlier) ++result.inliers;
  }
  result.reliable = result.inliers >= config.min_inliers;
  return result;
}

}  // namespace sslam
