#include "sslam/mapper.hpp"

#include <cmath>

#include "sslam/frontend.hpp"

namespace sslam {

int recover_correspondences(WorldMap& world,
                            const std::vector<int>& prev_unmatched,
                            int prev_frame_id, Frame& curr_frame,
                            const ImageU8& curr_left_image,
                            const MapperConfig& config) {
  const StereoRig& rig = *curr_frame.rig;
  int recovered = 0;

  for (int prev_index : prev_unmatched) {
    const FramepointRef prev_ref{prev_frame_id, prev_index};
    const Framepoint& prev_point = world.resolve(prev_ref);
    const Eigen::Vector3d p_w = prev_point.landmark_id >= 0
                                    ? world.landmark(prev_point.landmark_id).p_w
                                    : prev_point.p_w;
    const Eigen::Vector3d p_c = curr_frame.world_to_camera * p_w;
    if (p_c.z() <= 0) continue;

    const auto projection = project(p_c, rig.cam_left);
    if (!projection || !projection->in_view) continue;

    const int r = static_cast<int>(std::lround(projection->px.r));
    const int c = static_cast<int>(std::lround(projection->px.c));
    KeypointWD keypoint{r, c, 0.0f, {}};
    const auto descriptor = extract_brief(curr_left_image, keypoint);
    if (!descriptor) continue;  // too close to border
    if (hamming_distance(*descriptor, prev_point.k_left.d) >
        config.recovery_max_distance) {
      continue;
    }

    const double disparity = rig.baseline / p_c.z();
    const int c_right = static_cast<int>(std::lround(c - disparity));
    if (c_right >= c || c_right < 0) continue;

    keypoint.d = *descriptor;
    Framepoint point;
    point.k_left = keypoint;
    point.k_right = KeypointWD{r, c_right, 0.0f, keypoint.d};
    point.meas_left = {static_cast<double>(r), static_cast<double>(c)};
    point.meas_right = {static_cast<double>(r), static_cast<double>(c_right)};
    point.p_c = p_c;
    point.p_w = curr_frame.camera_to_world * p_c;
    curr_frame.points.push_back(point);

    const FramepointRef curr_ref{curr_frame.id,
                                 static_cast<int>(curr_frame.points.size()) - 1};
    link_track(world, prev_ref, curr_ref);
    ++recovered;
  }
  return recovered;
}

std::vector<int> promote_landmarks(WorldMap& world, Frame& curr_frame,
                                   const MapperConfig& config) {
  std::vector<int> new_landmarks;
  for (int index = 0; index < static_cast<int>(curr_frame.points.size());
       ++index) {
    const FramepointRef ref{curr_frame.id, index};
    Framepoint& point = curr_frame.points[index];
    if (point.landmark_id >= 0) continue;
    if (track_length(world, ref) < config.min_track_for_landmark) continue;

    Landmark& landmark = world.create_landmark();

    // walk back to the track head, tagging the whole track
    FramepointRef cursor = ref;
    FramepointRef head = ref;
    while (cursor.valid()) {
      world.resolve(cursor).landmark_id = landmark.id;
      head = cursor;
      cursor = world.resolve(cursor).prev;
    }
    landmark.origin = head;
    landmark.descriptors.push_back(point.k_left.d);
    update_landmark_filter(landmark, point.p_w, point.p_c.z(), config);
    new_landmarks.push_back(landmark.id);
  }
  return new_landmarks;
}

void update_landmark_filter(Landmark& landmark,
                            const Eigen::Vector3d& p_w_measured, double depth,
                            const MapperConfig& config) {
  const double sigma = config.measurement_sigma * depth;
  const Eigen::Matrix3d weight =
      Eigen::Matrix3d::Identity() / (sigma * sigma);
  landmark.omega += weight;
  landmark.nu += weight * p_w_measured;
  landmark.p_w = landmark.omega.ldlt().solve(landmark.nu);
  ++landmark.observation_count;
}

std::optional<int> maybe_create_local_map(WorldMap& world, PoseGraph& graph,
                                          const MapperConfig& config) {
  auto& pending = world.pending_frame_ids();
  if (pending.empty()) return std::nullopt;

  const Frame& current = world.frame(pending.back());
  const Isometry3 reference = world.local_map_count() > 0
                                  ? world.local_map(world.local_map_count() - 1)
                                        .world_to_camera
                                  : world.world_to_camera;
  const Isometry3 relative = reference * current.camera_to_world;
  if (relative.translation().norm() <= config.map_translation_threshold &&
      rotation_angle(relative) <= config.map_rotation_threshold) {
    return std::nullopt;
  }

  LocalMap& map = world.create_local_map();
  map.set_pose(current.camera_to_world);
  map.frame_ids = pending;
  for (int frame_id : map.frame_ids) {
    const Frame& frame = world.frame(frame_id);
    map.relative_frame_poses.push_back(map.world_to_camera *
                                       frame.camera_to_world);
    for (const Framepoint& point : frame.points) {
      if (point.landmark_id < 0) continue;
      Landmark& landmark = world.landmark(point.landmark_id);
      if (landmark.last_local_map_id != map.id) {
        landmark.last_local_map_id = map.id;
        map.landmark_ids.push_back(landmark.id);
      }
    }
  }
  pending.clear();

  graph.add_node(map.id, map.camera_to_world);
  if (map.id > 0) {
    graph.add_odometry_edge(world.local_map(map.id - 1), map);
  }
  return map.id;
}

}  // namespace sslam
