#include "sslam/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sslam {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  double parsed = 0;
  try {
    parsed = std::stod(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': " + value);
  }
  if (consumed != value.size()) {
    throw ConfigError("invalid numeric value for '" + key + "': " + value);
  }
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  const double parsed = parse_double(key, value);
  const int as_int = static_cast<int>(parsed);
  if (parsed != as_int) {
    throw ConfigError("expected integer for '" + key + "': " + value);
  }
  return as_int;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("expected boolean for '" + key + "': " + value);
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// key=value lines; '#' starts a comment line
void parse_flat_file(const std::filesystem::path& path,
                     const std::function<void(const std::string&,
                                              const std::string&)>& sink) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto equals = stripped.find('=');
    if (equals == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_number) +
                        ": expected key=value, got '" + stripped + "'");
    }
    sink(trim(stripped.substr(0, equals)), trim(stripped.substr(equals + 1)));
  }
}

}  // namespace

void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value) {
  const std::map<std::string, std::function<void()>> setters = {
      {"fast_threshold",
       [&] { config.detector.threshold = parse_int(key, value); }},
      {"target_keypoints",
       [&] { config.detector.target_count = parse_int(key, value); }},
      {"detector_band", [&] { config.detector.band = parse_double(key, value); }},
      {"min_threshold",
       [&] { config.detector.min_threshold = parse_int(key, value); }},
      {"max_threshold",
       [&] { config.detector.max_threshold = parse_int(key, value); }},
      {"stereo_max_distance",
       [&] { config.frame.stereo_max_distance = parse_int(key, value); }},
      {"bin_size", [&] { config.frame.bin_size = parse_int(key, value); }},
      {"search_half_width",
       [&] { config.tracker.search_half_width = parse_int(key, value); }},
      {"search_half_height",
       [&] { config.tracker.search_half_height = parse_int(key, value); }},
      {"match_max_distance",
       [&] { config.tracker.match_max_distance = parse_int(key, value); }},
      {"pose_iterations",
       [&] { config.tracker.iterations = parse_int(key, value); }},
      {"kernel_maximum_error",
       [&] { config.tracker.kernel_maximum_error = parse_double(key, value); }},
      {"close_depth",
       [&] { config.tracker.close_depth = parse_double(key, value); }},
      {"maximum_depth",
       [&] { config.tracker.maximum_depth = parse_double(key, value); }},
      {"landmark_weight",
       [&] { config.tracker.landmark_weight = parse_double(key, value); }},
      {"min_inliers",
       [&] { config.tracker.min_inliers = parse_int(key, value); }},
      {"recovery_max_distance",
       [&] { config.mapper.recovery_max_distance = parse_int(key, value); }},
      {"min_track_for_landmark",
       [&] { config.mapper.min_track_for_landmark = parse_int(key, value); }},
      {"map_translation_threshold",
       [&] {
         config.mapper.map_translation_threshold = parse_double(key, value);
       }},
      {"map_rotation_threshold",
       [&] {
         config.mapper.map_rotation_threshold = parse_double(key, value);
       }},
      {"measurement_sigma",
       [&] { config.mapper.measurement_sigma = parse_double(key, value); }},
      {"hbst_max_leaf_size",
       [&] { config.relocalizer.tree.max_leaf_size = parse_int(key, value); }},
      {"hbst_max_depth",
       [&] { config.relocalizer.tree.max_depth = parse_int(key, value); }},
      {"query_max_distance",
       [&] {
         config.relocalizer.query_max_distance = parse_int(key, value);
       }},
      {"min_overlap",
       [&] { config.relocalizer.min_overlap = parse_double(key, value); }},
      {"temporal_gap",
       [&] { config.relocalizer.temporal_gap = parse_int(key, value); }},
      {"icp_inlier_threshold",
       [&] {
         config.relocalizer.icp_inlier_threshold = parse_double(key, value);
       }},
      {"closure_min_inliers",
       [&] { config.relocalizer.min_inliers = parse_int(key, value); }},
      {"closure_max_mean_error",
       [&] {
         config.relocalizer.max_mean_error = parse_double(key, value);
       }},
      {"graph_iterations",
       [&] { config.graph_iterations = parse_int(key, value); }},
      {"lost_frame_limit",
       [&] { config.lost_frame_limit = parse_int(key, value); }},
      {"enable_relocalization",
       [&] { config.enable_relocalization = parse_bool(key, value); }},
  };

  const auto setter = setters.find(key);
  if (setter == setters.end()) {
    throw ConfigError("unknown config key: " + key);
  }
  setter->second();
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return load_pipeline_config(path, {});
}

PipelineConfig load_pipeline_config(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  PipelineConfig config;
  parse_flat_file(path, [&](const std::string& key, const std::string& value) {
    apply_config_entry(config, key, value);
  });
  for (const auto& [key, value] : overrides) {
    apply_config_entry(config, key, value);
  }
  return config;
}

SceneSpec load_scene_spec(const std::filesystem::path& path) {
  SceneSpec spec;
  double f_x = 700, f_y = 700, c_x = 620, c_y = 188;
  int width = 1241, height = 376;
  double baseline = 350;  // f_x * 0.5 m

  parse_flat_file(path, [&](const std::string& key, const std::string& value) {
    if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_double(key, value));
    } else if (key == "point_count") {
      spec.point_count = parse_int(key, value);
    } else if (key == "bound_x") {
      spec.bound_x = parse_double(key, value);
    } else if (key == "bound_y") {
      spec.bound_y = parse_double(key, value);
    } else if (key == "bound_z") {
      spec.bound_z = parse_double(key, value);
    } else if (key == "trajectory") {
      if (value == "straight") {
        spec.kind = TrajectoryKind::straight;
      } else if (value == "arc") {
        spec.kind = TrajectoryKind::arc;
      } else if (value == "loop") {
        spec.kind = TrajectoryKind::loop;
      } else {
        throw ConfigError("unknown trajectory kind: " + value);
      }
    } else if (key == "length") {
      spec.length = parse_double(key, value);
    } else if (key == "speed") {
      spec.speed = parse_double(key, value);
    } else if (key == "frame_rate") {
      spec.frame_rate = parse_double(key, value);
    } else if (key == "pixel_noise") {
      spec.pixel_noise = parse_double(key, value);
    } else if (key == "outlier_fraction") {
      spec.outlier_fraction = parse_double(key, value);
    } else if (key == "occlusion") {
      spec.occlusion = parse_bool(key, value);
    } else if (key == "f_x") {
      f_x = parse_double(key, value);
    } else if (key == "f_y") {
      f_y = parse_double(key, value);
    } else if (key == "c_x") {
      c_x = parse_double(key, value);
    } else if (key == "c_y") {
      c_y = parse_double(key, value);
    } else if (key == "width") {
      width = parse_int(key, value);
    } else if (key == "height") {
      height = parse_int(key, value);
    } else if (key == "baseline") {
      baseline = parse_double(key, value);
    } else {
      throw ConfigError("unknown scene key: " + key);
    }
  });

  if (spec.point_count < 1) throw ConfigError("point_count must be >= 1");
  if (spec.pixel_noise < 0) throw ConfigError("pixel_noise must be >= 0");
  if (spec.outlier_fraction < 0 || spec.outlier_fraction >= 1) {
    throw ConfigError("outlier_fraction must be in [0, 1)");
  }
  spec.rig = StereoRig::rectified(f_x, f_y, c_x, c_y, width, height, baseline);
  return spec;
}

}  // namespace sslam
