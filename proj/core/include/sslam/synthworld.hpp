#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sslam/image.hpp"
#include "sslam/map.hpp"

namespace sslam {

/// splitmix64: the sequence generator behind every synthetic-world random
/// draw. Fixed algorithm so identical seeds reproduce bit-identical
/// scenes on any platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_); }
  double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();  // Box-Muller, one draw per call

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

enum class TrajectoryKind { straight, arc, loop };

struct SceneSpec {
  std::uint64_t seed = 1;
  int point_count = 2000;
  // corridor extents around the trajectory (m): lateral, vertical, ahead;
  // narrow enough that close points stay inside the view frustum
  double bound_x = 10;
  double bound_y = 3;
  double bound_z = 35;
  TrajectoryKind kind = TrajectoryKind::straight;
  double length = 100;   // path length (m)
  double speed = 10;     // m/s
  double frame_rate = 10;  // Hz
  StereoRig rig;
  double pixel_noise = 0;      // sigma (px)
  double outlier_fraction = 0;  // [0, 1)
  bool occlusion = false;
};

struct ScenePoint {
  int id = -1;
  Eigen::Vector3d p_w = Eigen::Vector3d::Zero();
  Descriptor256 descriptor;  // unique synthetic appearance
};

struct Scene {
  SceneSpec spec;
  std::vector<ScenePoint> points;
  std::vector<Isometry3> poses;  // ground-truth camera-to-world
  std::vector<double> timestamps;
};

/// Deterministic from the seed. Loop trajectories close on their start
/// pose within 1e-9.
Scene generate_scene(const SceneSpec& spec);

struct RenderedKeypoint {
  int point_id = -1;
  PixelCoords left;
  PixelCoords right;
  double depth = 0;  // ground-truth camera depth (m)
  bool outlier = false;
  Descriptor256 descriptor;
};

struct RenderedFrame {
  std::vector<RenderedKeypoint> keypoints;
};

/// Exact pinhole projections of the visible points, optionally perturbed
/// by the pixel noise and rounded to integer pixels. Left and right rows
/// stay equal (rectified rendering). frame_index seeds the per-frame
/// noise stream.
RenderedFrame render_frame(const Scene& scene, const Isometry3& camera_to_world,
                           bool quantize, std::uint64_t frame_index);

/// Rasterizes a rendered frame into a stereo 8-bit image pair; each point
/// is drawn as its unique high-contrast 5x5 pattern on a dark background.
void rasterize_frame(const RenderedFrame& rendered, const StereoRig& rig,
                     ImageU8& left, ImageU8& right);

/// Builds a Frame in the world directly from rendered keypoints
/// (bypassing the image pipeline): each non-outlier keypoint with valid
/// disparity becomes a framepoint with triangulated coordinates. The
/// returned parallel list gives the source point id per framepoint.
Frame& frame_from_rendered(WorldMap& world, const RenderedFrame& rendered,
                           const StereoRig& rig,
                           const Isometry3& camera_to_world,
                           std::vector<int>* point_ids = nullptr);

/// Emits a KITTI-layout directory: image_0/, image_1/ (binary PGM),
/// calib.txt, times.txt, poses.txt.
void write_kitti_sequence(const Scene& scene,
                          const std::filesystem::path& out_dir);

}  // namespace sslam
