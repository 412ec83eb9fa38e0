#include "sslam/stereo.hpp"

#include <algorithm>

namespace sslam {

namespace {

void sort_row_major(std::vector<KeypointWD>& keypoints) {
  std::sort(keypoints.begin(), keypoints.end(),
            [](const KeypointWD& a, const KeypointWD& b) {
              return std::make_pair(a.r, a.c) < std::make_pair(b.r, b.c);
            });
}

}  // namespace

std::vector<std::pair<KeypointWD, KeypointWD>> match_stereo(
    std::vector<KeypointWD> left, std::vector<KeypointWD> right,
    int max_distance) {
  sort_row_major(left);
  sort_row_major(right);

  std::vector<std::pair<KeypointWD, KeypointWD>> pairs;
  const int n_left = static_cast<int>(left.size());
  const int n_right = static_cast<int>(right.size());
  int idx_right = 0;

  for (int idx_left = 0; idx_left < n_left; ++idx_left) {
    // advance to the first right keypoint on this row or below
    while (idx_right < n_right && right[idx_right].r < left[idx_left].r) {
      ++idx_right;
    }
    if (idx_right == n_right) {
      break;
    }
    if (right[idx_right].r > left[idx_left].r) {
      continue;
    }

    // scan the epipolar line left of the current keypoint
    int scan = idx_right;
    int dist_best = max_distance;
    int idx_best = -1;
    while (scan < n_right && right[scan].r == left[idx_left].r) {
      if (right[scan].c >= left[idx_left].c) {
        break;  // zero disparity stop condition
      }
      const int dist = hamming_distance(left[idx_left].d, right[scan].d);
      if (dist < dist_best) {
        dist_best = dist;
        idx_best = scan;
      }
      ++scan;
    }
    if (idx_best >= 0) {
      pairs.emplace_back(left[idx_left], right[idx_best]);
      idx_right = idx_best + 1;
    }
  }
  return pairs;
}

Frame& build_frame(WorldMap& world, const ImageU8& left_image,
                   const ImageU8& right_image, const StereoRig& rig,
                   DetectorState& detector,
                   const Isometry3& prior_camera_to_world,
                   const FrameBuildConfig& config, double timestamp) {
  std::vector<KeypointWD> left_raw =
      detect_fast(left_image, detector.threshold);
  std::vector<KeypointWD> right_raw =
      detect_fast(right_image, detector.threshold);
  const int left_count = static_cast<int>(left_raw.size());

  std::vector<KeypointWD> left_kps = regularize_grid(
      left_raw, config.bin_size, left_image.width, left_image.height);

  std::vector<KeypointWD> left_described;
  for (auto& kp : left_kps) {
    if (auto d = extract_brief(left_image, kp)) {
      kp.d = *d;
      left_described.push_back(kp);
    }
  }
  std::vector<KeypointWD> right_described;
  for (auto& kp : right_raw) {
    if (auto d = extract_brief(right_image, kp)) {
      kp.d = *d;
      right_described.push_back(kp);
    }
  }

  const auto pairs = match_stereo(std::move(left_described),
                                  std::move(right_described),
                                  config.stereo_max_distance);

  Frame& frame = world.create_frame(&rig, timestamp);
  frame.set_pose(prior_camera_to_world);
  for (const auto& [k_left, k_right] : pairs) {
    const auto p_c = triangulate(
        PixelCoords{static_cast<double>(k_left.r), static_cast<double>(k_left.c)},
        PixelCoords{static_cast<double>(k_right.r), static_cast<double>(k_right.c)},
        rig);
    if (!p_c) {
      continue;
    }
    Framepoint point;
    point.k_left = k_left;
    point.k_right = k_right;
    point.meas_left = {static_cast<double>(k_left.r),
                       static_cast<double>(k_left.c)};
    point.meas_right = {static_cast<double>(k_right.r),
                        static_cast<double>(k_right.c)};
    point.p_c = *p_c;
    point.p_w = frame.camera_to_world * *p_c;
    frame.points.push_back(point);
  }
  frame.degenerate = frame.points.empty();

  detector = adapt_threshold(detector, left_count);
  return frame;
}

}  // namespace sslam
