#pragma once

#include <vector>

#include "sslam/geometry.hpp"

namespace sslam {

struct RelativeErrors {
  struct PerLength {
    double length = 0;                    // m
    double translation_percent = 0;       // %
    double rotation_deg_per_100m = 0;     // deg / 100 m
    int windows = 0;
  };
  std::vector<PerLength> per_length;
  double mean_translation_percent = 0;  // over all windows
  double mean_rotation_deg_per_100m = 0;
  int total_windows = 0;
};

/// KITTI-style relative errors over subsequence lengths 100..800 m of
/// ground-truth arc length, every frame as a window start. Trajectories
/// shorter than 100 m yield an empty per-length table.
RelativeErrors kitti_relative_errors(const std::vector<Isometry3>& estimate,
                                     const std::vector<Isometry3>& ground_truth);

/// Absolute translation RMSE after closed-form rigid alignment (no
/// scale). Throws std::invalid_argument on fewer than 3 poses.
double ate_rmse(const std::vector<Isometry3>& estimate,
                const std::vector<Isometry3>& ground_truth);

/// RMSE of raw translation residuals, no alignment. Test support.
double translation_rmse(const std::vector<Isometry3>& estimate,
                        const std::vector<Isometry3>& ground_truth);

struct MetricsReport {
  RelativeErrors relative;
  double ate_rmse_m = 0;
  bool has_ground_truth = false;
  double mean_frame_duration_s = 0;
  double stddev_frame_duration_s = 0;
  int frames_processed = 0;
  int local_maps = 0;
  int closures_accepted = 0;
  bool tracking_halted = false;
};

}  // namespace sslam
