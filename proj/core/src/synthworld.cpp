#include "sslam/synthworld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "sslam/pgm.hpp"

namespace sslam {

double SplitMix::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-12) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return radius * std::cos(2.0 * M_PI * u2);
}

namespace {

// camera axes: x right, y down, z forward; yaw about +y follows the path
Isometry3 pose_at_arclength(const SceneSpec& spec, double s) {
  Isometry3 pose = Isometry3::Identity();
  if (spec.kind == TrajectoryKind::straight) {
    pose.translation() = Eigen::Vector3d(0, 0, s);
    return pose;
  }
  const double total_angle =
      spec.kind == TrajectoryKind::arc ? M_PI / 2.0 : 2.0 * M_PI;
  const double radius = spec.length / total_angle;
  const double theta = s / radius;
  pose.translation() =
      Eigen::Vector3d(radius * (1.0 - std::cos(theta)), 0, radius * std::sin(theta));
  pose.linear() = Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitY())
                      .toRotationMatrix();
  return pose;
}

Descriptor256 descriptor_from_stream(SplitMix& rng) {
  Descriptor256 d;
  for (auto& word : d.words) word = rng.next();
  return d;
}

std::uint64_t mix_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a ^ (0xD1B54A32D192ED03ull * (b + 1));
  return splitmix64(state);
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
  Scene scene;
  scene.spec = spec;

  const double spacing = spec.speed / spec.frame_rate;
  const int pose_count = static_cast<int>(std::lround(spec.length / spacing)) + 1;
  for (int i = 0; i < pose_count; ++i) {
    double s = i * spacing;
    if (spec.kind == TrajectoryKind::loop && i == pose_count - 1) {
      s = spec.length;  // close the loop exactly
    }
    scene.poses.push_back(pose_at_arclength(spec, s));
    scene.timestamps.push_back(i / spec.frame_rate);
  }

  SplitMix rng(spec.seed);
  for (int id = 0; id < spec.point_count; ++id) {
    const double s = rng.uniform(0, spec.length);
    const Eigen::Vector3d offset(rng.uniform(-spec.bound_x, spec.bound_x),
                                 rng.uniform(-spec.bound_y, spec.bound_y),
                                 rng.uniform(3.0, spec.bound_z));
    ScenePoint point;
    point.id = id;
    point.p_w = pose_at_arclength(spec, s) * offset;
    SplitMix descriptor_rng(mix_pair(spec.seed, 0x5eed + id));
    point.descriptor = descriptor_from_stream(descriptor_rng);
    scene.points.push_back(point);
  }
  return scene;
}

RenderedFrame render_frame(const Scene& scene, const Isometry3& camera_to_world,
                           bool quantize, std::uint64_t frame_index) {
  const SceneSpec& spec = scene.spec;
  const Camera& cam = spec.rig.cam_left;
  const Isometry3 world_to_camera = camera_to_world.inverse();
  SplitMix rng(mix_pair(spec.seed, frame_index));
  constexpr double kMargin = 22;  // descriptor border plus one

  RenderedFrame rendered;
  for (const ScenePoint& point : scene.points) {
    const Eigen::Vector3d p_c = world_to_camera * point.p_w;
    if (p_c.z() < 1.0) continue;
    if (spec.occlusion &&
        mix_pair(point.id, frame_index ^ 0x0cc1u) % 100 < 10) {
      continue;
    }

    const double disparity = spec.rig.baseline / p_c.z();
    if (disparity < 1.5) continue;

    RenderedKeypoint kp;
    kp.point_id = point.id;
    kp.depth = p_c.z();
    kp.descriptor = point.descriptor;
    kp.left.c = cam.f_x * p_c.x() / p_c.z() + cam.c_x;
    kp.left.r = cam.f_y * p_c.y() / p_c.z() + cam.c_y;
    kp.right.c = kp.left.c - disparity;
    kp.right.r = kp.left.r;

    if (spec.pixel_noise > 0) {
      kp.left.c += spec.pixel_noise * rng.gaussian();
      kp.left.r += spec.pixel_noise * rng.gaussian();
      kp.right.c += spec.pixel_noise * rng.gaussian();
      kp.right.r = kp.left.r;  // rectified rows stay aligned
    }
    if (spec.outlier_fraction > 0 && rng.uniform() < spec.outlier_fraction) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      kp.left.c += sign * rng.uniform(10, 40);
      kp.left.r += rng.uniform(-20, 20);
      kp.right.c = kp.left.c - disparity - sign * rng.uniform(2, 10);
      kp.right.r = kp.left.r;
      kp.outlier = true;
      kp.descriptor = descriptor_from_stream(rng);
    }
    if (quantize) {
      kp.left.c = std::round(kp.left.c);
      kp.left.r = std::round(kp.left.r);
      kp.right.c = std::round(kp.right.c);
      kp.right.r = kp.left.r;
    }

    if (kp.left.c < kMargin || kp.left.c >= cam.width - kMargin ||
        kp.left.r < kMargin || kp.left.r >= cam.height - kMargin ||
        kp.right.c < kMargin || kp.right.c >= cam.width - kMargin) {
      continue;
    }
    rendered.keypoints.push_back(kp);
  }
  return rendered;
}

void rasterize_frame(const RenderedFrame& rendered, const StereoRig& rig,
                     ImageU8& left, ImageU8& right) {
  constexpr std::uint8_t kBackground = 20;
  left = ImageU8(rig.cam_left.width, rig.cam_left.height, kBackground);
  right = ImageU8(rig.cam_right.width, rig.cam_right.height, kBackground);

  // 5x5 cell pattern, 3x3 px per cell, four gray levels per cell (50 bits
  // of appearance entropy): large enough that the descriptor patch is
  // dominated by the pattern, not the background, and distinct enough
  // that unrelated points rarely collide within the matching distance.
  // The mid-gray cells keep the bright center pixel the dominant corner,
  // so detection locks onto the exact projected position at every depth.
  const auto draw = [](ImageU8& image, int r, int c, std::uint64_t pattern) {
    int bit = 0;
    for (int cell_r = -2; cell_r <= 2; ++cell_r) {
      for (int cell_c = -2; cell_c <= 2; ++cell_c) {
        const auto level = static_cast<std::uint8_t>((pattern >> bit) & 3);
        const std::uint8_t value = 45 + 30 * level;
        bit += 2;
        for (int dr = 3 * cell_r - 1; dr <= 3 * cell_r + 1; ++dr) {
          for (int dc = 3 * cell_c - 1; dc <= 3 * cell_c + 1; ++dc) {
            if (r + dr >= 0 && r + dr < image.height && c + dc >= 0 &&
                c + dc < image.width) {
              image.at(r + dr, c + dc) = value;
            }
          }
        }
      }
    }
    if (r >= 0 && r < image.height && c >= 0 && c < image.width) {
      image.at(r, c) = 255;
    }
  };

  // painter's order: far points first, near patterns occlude them
  std::vector<const RenderedKeypoint*> order;
  order.reserve(rendered.keypoints.size());
  for (const auto& kp : rendered.keypoints) order.push_back(&kp);
  std::stable_sort(order.begin(), order.end(),
                   [](const RenderedKeypoint* a, const RenderedKeypoint* b) {
                     return a->depth > b->depth;
                   });

  for (const RenderedKeypoint* kp : order) {
    const std::uint64_t pattern = mix_pair(0x9a77e12u, kp->point_id);
    draw(left, static_cast<int>(std::lround(kp->left.r)),
         static_cast<int>(std::lround(kp->left.c)), pattern);
    draw(right, static_cast<int>(std::lround(kp->right.r)),
         static_cast<int>(std::lround(kp->right.c)), pattern);
  }
}

Frame& frame_from_rendered(WorldMap& world, const RenderedFrame& rendered,
                           const StereoRig& rig,
                           const Isometry3& camera_to_world,
                           std::vector<int>* point_ids) {
  Frame& frame = world.create_frame(&rig, 0);
  frame.set_pose(camera_to_world);
  if (point_ids) point_ids->clear();

  for (const auto& kp : rendered.keypoints) {
    const auto p_c = triangulate(kp.left, kp.right, rig);
    if (!p_c) continue;

    Framepoint point;
    point.k_left = KeypointWD{static_cast<int>(std::lround(kp.left.r)),
                              static_cast<int>(std::lround(kp.left.c)), 0.0f,
                              kp.descriptor};
    point.k_right = KeypointWD{static_cast<int>(std::lround(kp.right.r)),
                               static_cast<int>(std::lround(kp.right.c)), 0.0f,
                               kp.descriptor};
    point.meas_left = kp.left;
    point.meas_right = kp.right;
    point.p_c = *p_c;
    point.p_w = frame.camera_to_world * *p_c;
    frame.points.push_back(point);
    if (point_ids) point_ids->push_back(kp.point_id);
  }
  frame.degenerate = frame.points.empty();
  return frame;
}

void write_kitti_sequence(const Scene& scene,
                          const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "image_0");
  fs::create_directories(out_dir / "image_1");

  const Camera& cam = scene.spec.rig.cam_left;
  {
    std::ofstream calib(out_dir / "calib.txt");
    calib << std::setprecision(17);
    const auto write_row = [&](const char* tag, double b) {
      calib << tag << " " << cam.f_x << " 0 " << cam.c_x << " " << -b << " 0 "
            << cam.f_y << " " << cam.c_y << " 0 0 0 1 0\n";
    };
    write_row("P0:", 0.0);
    write_row("P1:", scene.spec.rig.baseline);
  }
  {
    std::ofstream times(out_dir / "times.txt");
    times << std::setprecision(17);
    for (double t : scene.timestamps) times << t << "\n";
  }
  {
    std::ofstream poses(out_dir / "poses.txt");
    poses << std::setprecision(17);
    for (const auto& pose : scene.poses) {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 4; ++c) {
          poses << pose.matrix()(r, c) << ((r == 2 && c == 3) ? '\n' : ' ');
        }
      }
    }
  }

  char name[32];
  for (std::size_t i = 0; i < scene.poses.size(); ++i) {
    const RenderedFrame rendered =
        render_frame(scene, scene.poses[i], true, i);
    ImageU8 left, right;
    rasterize_frame(rendered, scene.spec.rig, left, right);
    std::snprintf(name, sizeof(name), "%06zu.pgm", i);
    write_pgm(left, out_dir / "image_0" / name);
    write_pgm(right, out_dir / "image_1" / name);
  }
}

}  // namespace sslam
