#pragma once

#include <memory>
#include <vector>

#include "sslam/descriptor.hpp"
#include "sslam/geometry.hpp"

namespace sslam {

struct KeypointWD {
  int r = 0;
  int c = 0;
  float response = 0;
  Descriptor256 d;
};

// Stable reference to a framepoint, resolved through the WorldMap.
struct FramepointRef {
  int frame_id = -1;
  int index = -1;

  bool valid() const { return frame_id >= 0 && index >= 0; }
  bool operator==(const FramepointRef&) const = default;
};

struct Framepoint {
  KeypointWD k_left;
  KeypointWD k_right;
  // sub-pixel measurement coordinates used by the pose optimizer;
  // equal to the integer keypoint coordinates for detected points
  PixelCoords meas_left;
  PixelCoords meas_right;
  Eigen::Vector3d p_c = Eigen::Vector3d::Zero();  // camera coordinates (m)
  Eigen::Vector3d p_w = Eigen::Vector3d::Zero();  // world coordinates (m)
  FramepointRef prev;
  FramepointRef next;
  int landmark_id = -1;
  bool inlier = false;
};

struct Frame {
  int id = -1;
  Isometry3 camera_to_world = Isometry3::Identity();
  Isometry3 world_to_camera = Isometry3::Identity();
  std::vector<Framepoint> points;
  const StereoRig* rig = nullptr;
  double timestamp = 0;
  bool degenerate = false;

  // re-projects the rotation onto SO(3): the motion prior composes stored
  // poses every frame, so any non-orthogonality would feed back and grow
  // geometrically over a sequence
  void set_pose(const Isometry3& c2w) {
    camera_to_world = c2w;
    camera_to_world.linear() =
        Eigen::Quaterniond(c2w.linear()).normalized().toRotationMatrix();
    world_to_camera = camera_to_world.inverse();
  }
};

struct Landmark {
  int id = -1;
  Eigen::Vector3d p_w = Eigen::Vector3d::Zero();
  FramepointRef origin;
  Eigen::Matrix3d omega = Eigen::Matrix3d::Zero();  // information matrix
  Eigen::Vector3d nu = Eigen::Vector3d::Zero();     // information vector
  int observation_count = 0;
  int last_local_map_id = -1;
  std::vector<Descriptor256> descriptors;  // one per observation
};

struct LocalMap {
  int id = -1;
  Isometry3 camera_to_world = Isometry3::Identity();
  Isometry3 world_to_camera = Isometry3::Identity();
  std::vector<int> frame_ids;
  std::vector<int> landmark_ids;
  std::vector<Isometry3> relative_frame_poses;  // map frame -> frame pose

  void set_pose(const Isometry3& c2w) {
    camera_to_world = c2w;
    camera_to_world.linear() =
        Eigen::Quaterniond(c2w.linear()).normalized().toRotationMatrix();
    world_to_camera = camera_to_world.inverse();
  }
};

class WorldMap {
 public:
  Isometry3 camera_to_world = Isometry3::Identity();  // world origin
  Isometry3 world_to_camera = Isometry3::Identity();

  Frame& create_frame(const StereoRig* rig, double timestamp);
  Landmark& create_landmark();
  LocalMap& create_local_map();

  Frame& frame(int id) { return *frames_.at(id); }
  const Frame& frame(int id) const { return *frames_.at(id); }
  Landmark& landmark(int id) { return *landmarks_.at(id); }
  const Landmark& landmark(int id) const { return *landmarks_.at(id); }
  LocalMap& local_map(int id) { return *maps_.at(id); }
  const LocalMap& local_map(int id) const { return *maps_.at(id); }

  Framepoint& resolve(const FramepointRef& ref) {
    return frame(ref.frame_id).points.at(ref.index);
  }
  const Framepoint& resolve(const FramepointRef& ref) const {
    return frame(ref.frame_id).points.at(ref.index);
  }

  int frame_count() const { return static_cast<int>(frames_.size()); }
  int landmark_count() const { return static_cast<int>(landmarks_.size()); }
  int local_map_count() const { return static_cast<int>(maps_.size()); }

  // Frames tracked but not yet absorbed into a local map.
  std::vector<int>& pending_frame_ids() { return pending_frame_ids_; }

 private:
  std::vector<std::unique_ptr<Frame>> frames_;
  std::vector<std::unique_ptr<Landmark>> landmarks_;
  std::vector<std::unique_ptr<LocalMap>> maps_;
  std::vector<int> pending_frame_ids_;
};

/// Doubly links two framepoints into a track and propagates the landmark
/// reference forward. Throws std::logic_error on relinking.
void link_track(WorldMap& world, const FramepointRef& prev,
                const FramepointRef& curr);

/// Number of framepoints reachable through prev, inclusive.
/// Throws std::logic_error if a cycle is detected.
int track_length(const WorldMap& world, const FramepointRef& fp);

}  // namespace sslam
