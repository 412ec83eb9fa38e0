#pragma once

#include <filesystem>
#include <vector>

#include "sslam/geometry.hpp"

namespace sslam {

/// One line per pose: the 12 row-major entries of the upper 3x4 of the
/// camera-to-world transform, full precision.
void write_trajectory(const std::vector<Isometry3>& poses,
                      const std::filesystem::path& path);

std::vector<Isometry3> read_trajectory(const std::filesystem::path& path);

}  // namespace sslam
