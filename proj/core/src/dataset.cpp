#include "sslam/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sslam/pgm.hpp"

namespace sslam {

namespace {

std::vector<std::filesystem::path> list_images(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw LoadError("missing image directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

Matrix3x4 parse_projection_row(const std::string& line,
                               const std::string& label) {
  std::istringstream stream(line);
  std::string tag;
  stream >> tag;
  Matrix3x4 projection;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (!(stream >> projection(r, c))) {
        throw LoadError("calib.txt: malformed " + label + " row");
      }
    }
  }
  return projection;
}

}  // namespace

SequenceManifest load_kitti_sequence(const std::filesystem::path& root,
                                     const std::string& sequence_id) {
  const auto sequence_dir = root / sequence_id;
  if (!std::filesystem::is_directory(sequence_dir)) {
    throw LoadError("missing sequence directory: " + sequence_dir.string());
  }

  SequenceManifest manifest;
  manifest.left_images = list_images(sequence_dir / "image_0");
  if (manifest.left_images.empty()) {
    throw LoadError("no images found in " +
                    (sequence_dir / "image_0").string());
  }
  const auto right_dir = sequence_dir / "image_1";
  for (std::size_t i = 0; i < manifest.left_images.size(); ++i) {
    const auto right = right_dir / manifest.left_images[i].filename();
    if (!std::filesystem::is_regular_file(right)) {
      throw LoadError("missing right image for index " + std::to_string(i) +
                      ": " + right.string());
    }
    manifest.right_images.push_back(right);
  }

  // timestamps
  {
    std::ifstream times(sequence_dir / "times.txt");
    if (!times) {
      throw LoadError("missing times.txt in " + sequence_dir.string());
    }
    double value;
    while (times >> value) {
      manifest.timestamps.push_back(value);
    }
    if (manifest.timestamps.size() < manifest.left_images.size()) {
      throw LoadError("times.txt has fewer entries than images");
    }
    manifest.timestamps.resize(manifest.left_images.size());
    for (std::size_t i = 1; i < manifest.timestamps.size(); ++i) {
      if (manifest.timestamps[i] <= manifest.timestamps[i - 1]) {
        throw LoadError("times.txt not strictly increasing at index " +
                        std::to_string(i));
      }
    }
  }

  // calibration
  {
    std::ifstream calib(sequence_dir / "calib.txt");
    if (!calib) {
      throw LoadError("missing calib.txt in " + sequence_dir.string());
    }
    std::optional<Matrix3x4> p0, p1;
    std::string line;
    while (std::getline(calib, line)) {
      if (line.rfind("P0:", 0) == 0) p0 = parse_projection_row(line, "P0");
      if (line.rfind("P1:", 0) == 0) p1 = parse_projection_row(line, "P1");
    }
    if (!p0 || !p1) {
      throw LoadError("calib.txt missing P0/P1 projection rows");
    }
    if (((*p0).leftCols<3>() - (*p1).leftCols<3>()).norm() > 1e-9) {
      throw LoadError("calib.txt: cameras are not rectified (differing "
                      "intrinsics between P0 and P1)");
    }
    const double baseline = -(*p1)(0, 3);
    if (baseline <= 0) {
      throw LoadError("calib.txt: nonpositive baseline term");
    }
    const ImageU8 first = read_pgm(manifest.left_images.front());
    manifest.rig = StereoRig::rectified((*p0)(0, 0), (*p0)(1, 1), (*p0)(0, 2),
                                        (*p0)(1, 2), first.width, first.height,
                                        baseline);
  }

  // optional ground truth
  {
    auto poses_path = sequence_dir / "poses.txt";
    if (!std::filesystem::is_regular_file(poses_path)) {
      poses_path = root / "poses" / (sequence_id + ".txt");
    }
    if (std::filesystem::is_regular_file(poses_path)) {
      std::ifstream poses_file(poses_path);
      std::vector<Isometry3> poses;
      std::string line;
      while (std::getline(poses_file, line)) {
        if (line.empty()) continue;
        std::istringstream stream(line);
        Isometry3 pose = Isometry3::Identity();
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 4; ++c) {
            if (!(stream >> pose.matrix()(r, c))) {
              throw LoadError("malformed pose line in " + poses_path.string());
            }
          }
        }
        poses.push_back(pose);
      }
      if (poses.size() != manifest.left_images.size()) {
        throw LoadError("ground truth pose count does not match image count");
      }
      manifest.ground_truth = std::move(poses);
    }
  }
  return manifest;
}

}  // namespace sslam
