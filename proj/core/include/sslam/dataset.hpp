#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslam/geometry.hpp"

namespace sslam {

// Loader failures carry a human-readable description.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SequenceManifest {
  std::vector<std::filesystem::path> left_images;
  std::vector<std::filesystem::path> right_images;
  std::vector<double> timestamps;
  StereoRig rig;
  std::optional<std::vector<Isometry3>> ground_truth;  // camera-to-world
};

/// KITTI odometry layout: <root>/<sequence>/{image_0,image_1,times.txt,
/// calib.txt} with optional poses at <root>/<sequence>/poses.txt or
/// <root>/poses/<sequence>.txt. The rig comes from the P0/P1 projection
/// rows (B = -P1[0,3]). Throws LoadError with a description.
SequenceManifest load_kitti_sequence(const std::filesystem::path& root,
                                     const std::string& sequence_id);

}  // namespace sslam
