#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sslam/config.hpp"
#include "sslam/pipeline.hpp"
#include "sslam/synthworld.hpp"
#include "sslam/trajectory.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitLoadError = 2;
constexpr int kExitTrackingHalt = 3;

int run_command(const std::string& dataset, const std::string& sequence,
                const std::string& config_path, const std::string& out_dir,
                bool no_relocalization,
                const std::vector<std::string>& overrides) {
  sslam::PipelineConfig config;
  try {
    std::vector<std::pair<std::string, std::string>> parsed_overrides;
    for (const std::string& entry : overrides) {
      const auto equals = entry.find('=');
      if (equals == std::string::npos) {
        std::cerr << "override must be key=value: " << entry << "\n";
        return kExitUsage;
      }
      parsed_overrides.emplace_back(entry.substr(0, equals),
                                    entry.substr(equals + 1));
    }
    if (!config_path.empty()) {
      config = sslam::load_pipeline_config(config_path, parsed_overrides);
    } else {
      for (const auto& [key, value] : parsed_overrides) {
        sslam::apply_config_entry(config, key, value);
      }
    }
  } catch (const sslam::ConfigError& error) {
    std::cerr << error.what() << "\n";
    return kExitUsage;
  }
  if (no_relocalization) {
    config.enable_relocalization = false;
  }

  sslam::SequenceManifest manifest;
  try {
    manifest = sslam::load_kitti_sequence(dataset, sequence);
  } catch (const sslam::LoadError& error) {
    std::cerr << error.what() << "\n";
    return kExitLoadError;
  }

  const sslam::PipelineResult result =
      sslam::run_pipeline(manifest, config, out_dir);
  std::cout << sslam::format_metrics(result.report);
  if (result.report.tracking_halted) {
    std::cerr << "tracking lost for " << config.lost_frame_limit
              << " consecutive frames; partial trajectory written\n";
    return kExitTrackingHalt;
  }
  return 0;
}

int eval_command(const std::string& estimate_path,
                 const std::string& truth_path) {
  std::vector<sslam::Isometry3> estimate, truth;
  try {
    estimate = sslam::read_trajectory(estimate_path);
    truth = sslam::read_trajectory(truth_path);
  } catch (const std::exception& error) {
    std::cerr << error.what() << "\n";
    return kExitLoadError;
  }
  if (estimate.size() != truth.size() || estimate.size() < 3) {
    std::cerr << "trajectories must have equal length >= 3 (got "
              << estimate.size() << " vs " << truth.size() << ")\n";
    return kExitLoadError;
  }

  const sslam::RelativeErrors relative =
      sslam::kitti_relative_errors(estimate, truth);
  std::cout << "ATE RMSE (m): " << sslam::ate_rmse(estimate, truth) << "\n";
  std::cout << "length_m,translation_percent,rotation_deg_per_100m,windows\n";
  for (const auto& entry : relative.per_length) {
    std::cout << entry.length << "," << entry.translation_percent << ","
              << entry.rotation_deg_per_100m << "," << entry.windows << "\n";
  }
  std::cout << "mean relative translation error (%): "
            << relative.mean_translation_percent << "\n";
  std::cout << "mean relative rotation error (deg/100m): "
            << relative.mean_rotation_deg_per_100m << "\n";
  return 0;
}

int synth_command(const std::string& spec_path, const std::string& out_dir) {
  sslam::SceneSpec spec;
  try {
    spec = sslam::load_scene_spec(spec_path);
  } catch (const sslam::ConfigError& error) {
    std::cerr << error.what() << "\n";
    return kExitUsage;
  }
  const sslam::Scene scene = sslam::generate_scene(spec);
  sslam::write_kitti_sequence(scene, out_dir);
  std::cout << "wrote " << scene.poses.size() << " stereo frames to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stereo visual SLAM pipeline"};
  app.require_subcommand(1);

  std::string dataset, sequence, config_path, out_dir;
  bool no_relocalization = false;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "process a stereo sequence");
  run->add_option("--dataset", dataset, "dataset root directory")->required();
  run->add_option("--sequence", sequence, "sequence id")->required();
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_flag("--no-relocalization", no_relocalization,
                "disable loop closing");
  run->add_option("--set", overrides, "config override key=value");

  std::string estimate_path, truth_path;
  auto* eval = app.add_subcommand("eval", "compare two trajectory files");
  eval->add_option("--estimate", estimate_path, "estimated trajectory")
      ->required();
  eval->add_option("--truth", truth_path, "ground-truth trajectory")
      ->required();

  std::string spec_path, synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic sequence");
  synth->add_option("--spec", spec_path, "scene spec file")->required();
  synth->add_option("--out", synth_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      return run_command(dataset, sequence, config_path, out_dir,
                         no_relocalization, overrides);
    }
    if (eval->parsed()) {
      return eval_command(estimate_path, truth_path);
    }
    return synth_command(spec_path, synth_out);
  } catch (const std::exception& error) {
    std::cerr << error.what() << "\n";
    return kExitLoadError;
  }
}
