#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "sslam/config.hpp"
#include "sslam/dataset.hpp"
#include "sslam/metrics.hpp"

namespace sslam {

struct PipelineResult {
  MetricsReport report;
  std::vector<Isometry3> trajectory;  // camera-to-world, one per frame
  std::vector<double> frame_durations_s;
};

/// Runs the full SLAM loop over the sequence: triangulation, tracking,
/// landmark mapping, local-map segmentation and (optionally) loop closing
/// with pose-graph correction. When out_dir is non-empty, writes
/// trajectory.txt, metrics.txt and metrics.csv there. Deterministic: no
/// runtime randomness, so identical inputs give bit-identical outputs.
/// image_source overrides image loading (defaults to reading the
/// manifest's PGM files); loading time is excluded from the per-frame
/// timings.
PipelineResult run_pipeline(
    const SequenceManifest& manifest, const PipelineConfig& config,
    const std::filesystem::path& out_dir = {},
    const std::function<void(std::size_t, ImageU8&, ImageU8&)>& image_source =
        {});

/// Renders the metrics table of a finished run.
std::string format_metrics(const MetricsReport& report);

}  // namespace sslam
