#pragma once

#include <filesystem>

#include "sslam/image.hpp"

namespace sslam {

/// Reads a binary (P5) 8-bit PGM file. Throws std::runtime_error on
/// malformed input.
ImageU8 read_pgm(const std::filesystem::path& path);

/// Writes a binary (P5) 8-bit PGM file.
void write_pgm(const ImageU8& image, const std::filesystem::path& path);

}  // namespace sslam
