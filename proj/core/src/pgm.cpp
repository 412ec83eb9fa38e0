#include "sslam/pgm.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace sslam {

namespace {

// next whitespace-delimited token, skipping '#' comment lines
std::string next_token(std::istream& in) {
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return token;
  }
  throw std::runtime_error("pgm: truncated header");
}

}  // namespace

ImageU8 read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("pgm: cannot open " + path.string());
  }
  if (next_token(in) != "P5") {
    throw std::runtime_error("pgm: not a binary P5 file: " + path.string());
  }
  const int width = std::stoi(next_token(in));
  const int height = std::stoi(next_token(in));
  const int maxval = std::stoi(next_token(in));
  if (width <= 0 || height <= 0 || maxval != 255) {
    throw std::runtime_error("pgm: unsupported header in " + path.string());
  }
  in.get();  // single whitespace after maxval

  ImageU8 image(width, height);
  in.read(reinterpret_cast<char*>(image.data.data()),
          static_cast<std::streamsize>(image.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.data.size())) {
    throw std::runtime_error("pgm: truncated pixel data in " + path.string());
  }
  return image;
}

void write_pgm(const ImageU8& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("pgm: cannot write " + path.string());
  }
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) {
    throw std::runtime_error("pgm: write failure on " + path.string());
  }
}

}  // namespace sslam
