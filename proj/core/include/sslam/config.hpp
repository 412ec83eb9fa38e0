#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslam/frontend.hpp"
#include "sslam/mapper.hpp"
#include "sslam/relocalizer.hpp"
#include "sslam/stereo.hpp"
#include "sslam/synthworld.hpp"
#include "sslam/tracker.hpp"

namespace sslam {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every tunable constant of the pipeline in one place.
struct PipelineConfig {
  DetectorState detector;
  FrameBuildConfig frame;
  TrackerConfig tracker;
  MapperConfig mapper;
  RelocalizerConfig relocalizer;
  int graph_iterations = 25;
  int lost_frame_limit = 30;
  bool enable_relocalization = true;
};

/// Applies a single `key=value` assignment. Unknown keys and unparsable
/// values raise ConfigError naming the key.
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

/// Flat key=value text; blank lines and lines starting with '#' are
/// skipped. Later assignments win.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// File values first, then overrides in order.
PipelineConfig load_pipeline_config(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& overrides);

/// Same key=value format for synthetic scene descriptions
/// (seed, point_count, trajectory=straight|arc|loop, length, ...).
SceneSpec load_scene_spec(const std::filesystem::path& path);

}  // namespace sslam
