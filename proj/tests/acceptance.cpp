// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL
// line; the process exits nonzero when any gating criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "sslam/config.hpp"
#include "sslam/metrics.hpp"
#include "sslam/pipeline.hpp"
#include "sslam/pose_graph.hpp"
#include "sslam/stereo.hpp"
#include "sslam/synthworld.hpp"
#include "sslam/tracker.hpp"

using namespace sslam;
using sslam::testing::default_rig;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- 1
bool jacobian_finite_differences(std::string& detail) {
  const StereoRig rig = default_rig();
  SplitMix rng(1001);
  const double step = 1e-6;
  const auto start = Clock::now();

  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Isometry3 world_to_camera =
        sslam::testing::random_isometry(rng, 5.0, 0.8);
    const Eigen::Vector3d p_c(rng.uniform(-10, 10), rng.uniform(-3, 3),
                              rng.uniform(1, 100));
    const Eigen::Vector3d p_w = world_to_camera.inverse() * p_c;

    const auto reproject = [&](const Isometry3& pose) {
      const Eigen::Vector3d p = pose * p_w;
      const auto left = project(p, rig.cam_left);
      const auto right = project(p, rig.cam_right);
      return Eigen::Vector4d(left->px.c, left->px.r, right->px.c,
                             right->px.r);
    };

    const Matrix4x6 jacobian = stereo_jacobian(world_to_camera, p_c, rig);
    Matrix4x6 numeric;
    for (int col = 0; col < 6; ++col) {
      TwistVector dx = TwistVector::Zero();
      dx[col] = step;
      const Eigen::Vector4d forward =
          reproject(pose_perturbation(dx) * world_to_camera);
      dx[col] = -step;
      const Eigen::Vector4d backward =
          reproject(pose_perturbation(dx) * world_to_camera);
      numeric.col(col) = (forward - backward) / (2 * step);
    }
    worst = std::max(worst, (jacobian - numeric).norm() /
                                std::max(1.0, numeric.norm()));
  }
  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << "worst relative error " << worst << ", " << elapsed << " s";
  detail = out.str();
  return worst < 1e-4 && elapsed < 1.0;
}

// ---------------------------------------------------------------- 2
bool pose_optimizer_recovery(std::string& detail) {
  const StereoRig rig = default_rig();
  const auto start = Clock::now();
  int passed = 0;
  double worst_t = 0, worst_r = 0;

  for (int seed = 1; seed <= 100; ++seed) {
    SceneSpec spec;
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.point_count = 3000;
    spec.length = 2;
    spec.speed = 4;   // 0.4 m per frame
    spec.bound_z = 9; // keep every visible point within the close-depth band
    spec.rig = rig;
    const Scene scene = generate_scene(spec);

    WorldMap world;
    const int linked =
        sslam::testing::build_linked_pair(world, scene, rig, 0, 1);
    if (linked < 20) continue;

    Frame& frame = world.frame(1);
    const Isometry3 truth_w2c = frame.world_to_camera;

    SplitMix rng(9000 + seed);
    TwistVector noise = sslam::testing::random_twist(rng, 0.1, 0.02);
    const Isometry3 prior = pose_perturbation(noise) * truth_w2c;

    const PoseResult result =
        optimize_pose(world, frame, prior, TrackerConfig{});
    const Isometry3 residual = result.world_to_camera * truth_w2c.inverse();
    const double err_t = residual.translation().norm();
    const double err_r = rotation_angle(residual);
    worst_t = std::max(worst_t, err_t);
    worst_r = std::max(worst_r, err_r);
    if (result.reliable && err_t < 1e-5 && err_r < 1e-6) ++passed;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << passed << "/100 seeds, worst " << worst_t << " m / " << worst_r
      << " rad, " << elapsed << " s";
  detail = out.str();
  return passed == 100 && elapsed < 5.0;
}

// ---------------------------------------------------------------- 3
std::vector<std::pair<KeypointWD, KeypointWD>> greedy_oracle(
    std::vector<KeypointWD> left, std::vector<KeypointWD> right,
    int max_distance) {
  const auto row_major = [](const KeypointWD& a, const KeypointWD& b) {
    return std::make_pair(a.r, a.c) < std::make_pair(b.r, b.c);
  };
  std::sort(left.begin(), left.end(), row_major);
  std::sort(right.begin(), right.end(), row_major);
  std::map<int, std::vector<KeypointWD>> rows;
  for (const auto& kp : right) rows[kp.r].push_back(kp);

  std::vector<std::pair<KeypointWD, KeypointWD>> pairs;
  std::map<int, std::size_t> cursor;
  for (const auto& kp : left) {
    const auto row = rows.find(kp.r);
    if (row == rows.end()) continue;
    int best_distance = max_distance;
    int best_index = -1;
    for (std::size_t j = cursor[kp.r]; j < row->second.size(); ++j) {
      if (row->second[j].c >= kp.c) break;
      const int distance = hamming_distance(kp.d, row->second[j].d);
      if (distance < best_distance) {
        best_distance = distance;
        best_index = static_cast<int>(j);
      }
    }
    if (best_index >= 0) {
      pairs.emplace_back(kp, row->second[best_index]);
      cursor[kp.r] = best_index + 1;
    }
  }
  return pairs;
}

std::pair<std::vector<KeypointWD>, std::vector<KeypointWD>> random_instance(
    SplitMix& rng, int count, int rows) {
  const auto descriptor = [&rng] {
    Descriptor256 d;
    for (auto& word : d.words) word = rng.next();
    return d;
  };
  std::vector<KeypointWD> left, right;
  for (int i = 0; i < count; ++i) {
    left.push_back({static_cast<int>(rng.next() % rows),
                    static_cast<int>(rng.next() % 1200), 0, descriptor()});
  }
  for (int i = 0; i < count; ++i) {
    KeypointWD kp{static_cast<int>(rng.next() % rows),
                  static_cast<int>(rng.next() % 1200), 0, {}};
    kp.d = (rng.next() & 1) ? left[rng.next() % left.size()].d : descriptor();
    right.push_back(kp);
  }
  return {std::move(left), std::move(right)};
}

bool stereo_matcher_oracle(std::string& detail) {
  SplitMix rng(3003);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 20 + static_cast<int>(rng.next() % 300);
    auto [left, right] = random_instance(rng, count, 40);
    const auto got = match_stereo(left, right, 25);
    const auto expected = greedy_oracle(left, right, 25);
    if (got.size() != expected.size()) {
      detail = "output size mismatch on trial " + std::to_string(trial);
      return false;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].first.r != expected[i].first.r ||
          got[i].first.c != expected[i].first.c ||
          got[i].second.r != expected[i].second.r ||
          got[i].second.c != expected[i].second.c) {
        detail = "pair mismatch on trial " + std::to_string(trial);
        return false;
      }
    }
  }

  // scaling: 10x the keypoints over 10x the rows (constant row density)
  // best-of-N per size to suppress scheduler noise on a shared core
  const auto time_matches = [](int count, int rows, int reps) {
    SplitMix local(4004);
    auto [left, right] = random_instance(local, count, rows);
    double best = std::numeric_limits<double>::infinity();
    std::size_t sink = 0;
    for (int rep = 0; rep < reps; ++rep) {
      const auto start = Clock::now();
      sink += match_stereo(left, right, 25).size();
      best = std::min(best, seconds_since(start));
    }
    (void)sink;
    return best;
  };
  const double small = time_matches(5000, 37, 20);
  const double large = time_matches(50000, 370, 5);
  const double ratio = large / small;
  std::ostringstream out;
  out << "oracle 100/100, 10x input took " << ratio << "x time";
  detail = out.str();
  return ratio <= 15.0;
}

// ---------------------------------------------------------------- 4
bool filter_equals_batch(std::string& detail) {
  const MapperConfig config;
  SplitMix rng(5005);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 40);
    Landmark landmark;
    double weight_sum = 0;
    Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d m(rng.uniform(-10, 10), rng.uniform(-3, 3),
                              rng.uniform(1, 50));
      const double depth = rng.uniform(1, 60);
      update_landmark_filter(landmark, m, depth, config);
      const double w = 1.0 / std::pow(config.measurement_sigma * depth, 2);
      weight_sum += w;
      weighted += w * m;
    }
    worst = std::max(worst, (landmark.p_w - weighted / weight_sum).norm());
  }
  std::ostringstream out;
  out << "worst deviation from batch solution " << worst;
  detail = out.str();
  return worst < 1e-9;
}

// ---------------------------------------------------------------- 5
bool pose_graph_recovery(std::string& detail) {
  const auto start = Clock::now();
  SplitMix rng(6006);
  double worst_pose = 0, worst_chi2 = 0;
  bool all_ok = true;

  for (int graph_index = 0; graph_index < 50; ++graph_index) {
    const int n = 5 + static_cast<int>(rng.next() % 6);
    std::vector<Isometry3> truth{Isometry3::Identity()};
    for (int i = 1; i < n; ++i) {
      truth.push_back(truth.back() *
                      sslam::testing::random_isometry(rng, 4.0, 0.4));
    }

    PoseGraph graph;
    for (int i = 0; i < n; ++i) graph.add_node(i, truth[i]);
    const auto add_edge = [&](int from, int to) {
      LocalMap a, b;
      a.id = from;
      b.id = to;
      a.set_pose(truth[from]);
      b.set_pose(truth[to]);
      graph.add_odometry_edge(a, b);
    };
    for (int i = 1; i < n; ++i) add_edge(i - 1, i);
    add_edge(n - 1, 0);  // close the loop

    for (int i = 1; i < n; ++i) {
      graph.nodes()[i].pose =
          pose_perturbation(sslam::testing::random_twist(rng, 0.05, 0.01)) *
          graph.nodes()[i].pose;
    }
    graph.optimize(150);

    worst_chi2 = std::max(worst_chi2, graph.chi_squared());
    for (int i = 0; i < n; ++i) {
      const Isometry3 residual = graph.nodes()[i].pose.inverse() * truth[i];
      worst_pose = std::max(
          worst_pose,
          std::max(residual.translation().norm(), rotation_angle(residual)));
    }
  }
  const double elapsed = seconds_since(start);
  all_ok = worst_pose < 1e-6 && worst_chi2 < 1e-12 && elapsed < 10.0;
  std::ostringstream out;
  out << "worst pose error " << worst_pose << ", worst chi2 " << worst_chi2
      << ", " << elapsed << " s";
  detail = out.str();
  return all_ok;
}

// -------------------------------------------------------- pipeline glue
SequenceManifest in_memory_manifest(const Scene& scene) {
  SequenceManifest manifest;
  manifest.left_images.resize(scene.poses.size());
  manifest.right_images.resize(scene.poses.size());
  manifest.timestamps = scene.timestamps;
  manifest.rig = scene.spec.rig;
  manifest.ground_truth = scene.poses;
  return manifest;
}

PipelineResult run_synthetic(const Scene& scene, const PipelineConfig& config,
                             const fs::path& out_dir = {}) {
  const SequenceManifest manifest = in_memory_manifest(scene);
  const auto source = [&scene](std::size_t index, ImageU8& left,
                               ImageU8& right) {
    const RenderedFrame rendered =
        render_frame(scene, scene.poses[index], true, index);
    rasterize_frame(rendered, scene.spec.rig, left, right);
  };
  return run_pipeline(manifest, config, out_dir, source);
}

PipelineConfig closure_config() {
  PipelineConfig config;
  config.relocalizer.min_overlap = 0.1;
  config.relocalizer.temporal_gap = 8;
  config.graph_iterations = 200;
  return config;
}

// ---------------------------------------------------------------- 6
bool loop_closure_efficacy(std::string& detail) {
  SceneSpec spec;
  spec.seed = 5;
  spec.point_count = 800;
  spec.kind = TrajectoryKind::loop;
  spec.length = 200;
  spec.speed = 4;
  spec.pixel_noise = 0.3;
  spec.rig = default_rig();
  const Scene scene = generate_scene(spec);

  PipelineConfig with = closure_config();
  const PipelineResult closed = run_synthetic(scene, with);

  PipelineConfig without = closure_config();
  without.enable_relocalization = false;
  const PipelineResult open = run_synthetic(scene, without);

  std::ostringstream out;
  out << "ATE " << closed.report.ate_rmse_m << " m with "
      << closed.report.closures_accepted << " closures vs "
      << open.report.ate_rmse_m << " m ablated";
  detail = out.str();
  return closed.report.has_ground_truth && !closed.report.tracking_halted &&
         closed.report.closures_accepted > 0 &&
         closed.report.ate_rmse_m <= 0.5 * open.report.ate_rmse_m;
}

// ---------------------------------------------------------------- 7 / 8
bool drift_under_one_percent(std::string& detail, double& mean_frame_s) {
  SceneSpec spec;
  spec.seed = 9;
  spec.point_count = 2000;
  spec.kind = TrajectoryKind::arc;
  spec.length = 500;
  spec.speed = 5;
  spec.pixel_noise = 0.3;
  spec.rig = default_rig();
  const Scene scene = generate_scene(spec);

  const PipelineResult result = run_synthetic(scene, PipelineConfig{});
  mean_frame_s = result.report.mean_frame_duration_s;

  std::ostringstream out;
  out << "mean relative translation error "
      << result.report.relative.mean_translation_percent << " % over "
      << result.report.relative.total_windows << " windows";
  detail = out.str();
  return result.report.has_ground_truth && !result.report.tracking_halted &&
         result.report.relative.total_windows > 0 &&
         result.report.relative.mean_translation_percent < 1.0;
}

// ---------------------------------------------------------------- 9
bool optional_real_dataset(std::string& detail, bool& skipped) {
  const char* env_root = std::getenv("SSLAM_KITTI_ROOT");
  fs::path root = env_root ? fs::path(env_root) : fs::path("datasets/kitti");
  if (!fs::is_directory(root / "00")) {
    skipped = true;
    detail = "no dataset at " + root.string() + " (set SSLAM_KITTI_ROOT)";
    return true;
  }
  skipped = false;
  try {
    const SequenceManifest manifest = load_kitti_sequence(root, "00");
    const PipelineResult result =
        run_pipeline(manifest, PipelineConfig{}, {}, {});
    std::ostringstream out;
    out << "frames " << result.report.frames_processed << ", halted "
        << (result.report.tracking_halted ? "yes" : "no");
    detail = out.str();
    return !result.report.tracking_halted;
  } catch (const std::exception& error) {
    detail = error.what();
    return false;
  }
}

// ---------------------------------------------------------------- 10
bool deterministic_runs(std::string& detail) {
  SceneSpec spec;
  spec.seed = 7;
  spec.point_count = 400;
  spec.length = 40;
  spec.speed = 4;
  spec.pixel_noise = 0.3;
  spec.rig = default_rig();
  const Scene scene = generate_scene(spec);

  const fs::path base = fs::temp_directory_path() / "sslam_acceptance_det";
  fs::remove_all(base);
  const fs::path dir_a = base / "a";
  const fs::path dir_b = base / "b";
  (void)run_synthetic(scene, PipelineConfig{}, dir_a);
  (void)run_synthetic(scene, PipelineConfig{}, dir_b);

  const auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string first = slurp(dir_a / "trajectory.txt");
  const std::string second = slurp(dir_b / "trajectory.txt");
  fs::remove_all(base);

  std::ostringstream out;
  out << "trajectory files " << first.size() << " bytes, "
      << (first == second ? "identical" : "DIFFER");
  detail = out.str();
  return !first.empty() && first == second;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&failures](int index, const char* name, bool ok,
                                  const std::string& detail,
                                  bool gating = true) {
    std::cout << "criterion " << index << " [" << name << "]: "
              << (ok ? "PASS" : (gating ? "FAIL" : "FAIL (informational)"))
              << " — " << detail << std::endl;
    if (!ok && gating) ++failures;
  };

  std::string detail;

  report(1, "stereo jacobian vs finite differences",
         jacobian_finite_differences(detail), detail);
  report(2, "pose optimizer recovery", pose_optimizer_recovery(detail),
         detail);
  report(3, "stereo matcher oracle and scaling", stereo_matcher_oracle(detail),
         detail);
  report(4, "landmark filter vs batch least squares",
         filter_equals_batch(detail), detail);
  report(5, "pose graph loop recovery", pose_graph_recovery(detail), detail);
  report(6, "loop closure efficacy", loop_closure_efficacy(detail), detail);

  double mean_frame_s = 0;
  report(7, "relative drift under 1 percent",
         drift_under_one_percent(detail, mean_frame_s), detail);
  {
    std::ostringstream out;
    out << "mean frame time " << mean_frame_s << " s";
    report(8, "throughput at ten frames per second", mean_frame_s > 0 &&
               mean_frame_s <= 0.1, out.str());
  }

  bool skipped = false;
  const bool real = optional_real_dataset(detail, skipped);
  if (skipped) {
    std::cout << "criterion 9 [real dataset]: SKIP — " << detail << std::endl;
  } else {
    report(9, "real dataset", real, detail, /*gating=*/false);
  }

  report(10, "bit-identical reruns", deterministic_runs(detail), detail);

  std::cout << (failures == 0 ? "ACCEPTANCE: all gating criteria passed"
                              : "ACCEPTANCE: failures present")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
