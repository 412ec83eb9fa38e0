#include "sslam/trajectory.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sslam {

void write_trajectory(const std::vector<Isometry3>& poses,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write trajectory: " + path.string());
  }
  out << std::setprecision(17);
  for (const auto& pose : poses) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        out << pose.matrix()(r, c);
        out << ((r == 2 && c == 3) ? '\n' : ' ');
      }
    }
  }
  if (!out) {
    throw std::runtime_error("write failure on " + path.string());
  }
}

std::vector<Isometry3> read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read trajectory: " + path.string());
  }
  std::vector<Isometry3> poses;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream stream(line);
    Isometry3 pose = Isometry3::Identity();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (!(stream >> pose.matrix()(r, c))) {
          throw std::runtime_error("malformed trajectory line in " +
                                   path.string());
        }
      }
    }
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace sslam
