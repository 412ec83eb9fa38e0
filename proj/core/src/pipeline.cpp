#include "sslam/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sslam/pgm.hpp"
#include "sslam/pose_graph.hpp"
#include "sslam/trajectory.hpp"

namespace sslam {

namespace {

std::vector<HbstEntry> map_descriptor_entries(const WorldMap& world,
                                              const LocalMap& map) {
  std::vector<HbstEntry> entries;
  for (int landmark_id : map.landmark_ids) {
    for (const Descriptor256& d : world.landmark(landmark_id).descriptors) {
      entries.push_back({d, landmark_id, map.id});
    }
  }
  return entries;
}

int relocalize(WorldMap& world, PoseGraph& graph, HbstTree& tree,
               const LocalMap& map, const PipelineConfig& config) {
  const RelocalizerConfig& reloc = config.relocalizer;
  const auto candidates =
      find_closure_candidates(tree, world, map, reloc.min_overlap,
                              reloc.temporal_gap, reloc.query_max_distance);
  int accepted = 0;
  for (const CandidateOverlap& candidate : candidates) {
    if (static_cast<int>(candidate.landmark_pairs.size()) < reloc.min_inliers) {
      continue;
    }
    const LocalMap& past = world.local_map(candidate.local_map_id);
    std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> correspondences;
    correspondences.reserve(candidate.landmark_pairs.size());
    for (const auto& [current_id, past_id] : candidate.landmark_pairs) {
      correspondences.emplace_back(
          map.world_to_camera * world.landmark(current_id).p_w,
          past.world_to_camera * world.landmark(past_id).p_w);
    }
    const IcpResult icp =
        align_icp(correspondences, reloc.icp_inlier_threshold);
    if (icp.degenerate) continue;
    const auto closure = validate_closure(icp, map.id, past.id,
                                          reloc.min_inliers,
                                          reloc.max_mean_error);
    if (!closure) continue;
    graph.add_closure_edge(*closure);
    ++accepted;
  }
  if (accepted > 0) {
    graph.optimize(config.graph_iterations);
    broadcast_poses(world, graph);
  }
  return accepted;
}

}  // namespace

PipelineResult run_pipeline(
    const SequenceManifest& manifest, const PipelineConfig& config,
    const std::filesystem::path& out_dir,
    const std::function<void(std::size_t, ImageU8&, ImageU8&)>& image_source) {
  using Clock = std::chrono::steady_clock;

  WorldMap world;
  PoseGraph graph;
  HbstTree tree(config.relocalizer.tree);
  DetectorState detector = config.detector;

  PipelineResult result;
  int consecutive_lost = 0;
  int prev_frame_id = -1;
  std::optional<Isometry3> pose_prevprev;

  for (std::size_t index = 0; index < manifest.left_images.size(); ++index) {
    // image loading stays outside the timed section
    ImageU8 left, right;
    if (image_source) {
      image_source(index, left, right);
    } else {
      left = read_pgm(manifest.left_images[index]);
      right = read_pgm(manifest.right_images[index]);
    }

    const auto start = Clock::now();

    Isometry3 prior_c2w = Isometry3::Identity();
    if (prev_frame_id >= 0) {
      prior_c2w = predict_motion(world.frame(prev_frame_id).camera_to_world,
                                 pose_prevprev);
    }

    Frame& frame =
        build_frame(world, left, right, manifest.rig, detector, prior_c2w,
                    config.frame, manifest.timestamps[index]);

    bool reliable = true;
    if (prev_frame_id >= 0) {
      const Frame& prev = world.frame(prev_frame_id);
      std::vector<KeypointWD> curr_keypoints;
      curr_keypoints.reserve(frame.points.size());
      for (const Framepoint& point : frame.points) {
        curr_keypoints.push_back(point.k_left);
      }
      const ProjectionMatches matched =
          match_projections(world, prev, curr_keypoints, prior_c2w.inverse(),
                            config.tracker);
      for (const auto& [prev_index, curr_index] : matched.matches) {
        link_track(world, {prev.id, prev_index}, {frame.id, curr_index});
      }

      const PoseResult pose =
          optimize_pose(world, frame, prior_c2w.inverse(), config.tracker);
      reliable = pose.reliable;

      if (reliable) {
        consecutive_lost = 0;
        frame.set_pose(pose.world_to_camera.inverse());
        for (Framepoint& point : frame.points) {
          point.p_w = frame.camera_to_world * point.p_c;
        }
        recover_correspondences(world, matched.unmatched, prev.id, frame,
                                left, config.mapper);
        for (Framepoint& point : frame.points) {
          if (point.landmark_id < 0) continue;
          Landmark& landmark = world.landmark(point.landmark_id);
          update_landmark_filter(landmark, point.p_w, point.p_c.z(),
                                 config.mapper);
          landmark.descriptors.push_back(point.k_left.d);
        }
        promote_landmarks(world, frame, config.mapper);
      } else {
        // tracking lost: fall back to the motion prior
        frame.set_pose(prior_c2w);
        ++consecutive_lost;
      }
    }

    world.pending_frame_ids().push_back(frame.id);
    if (reliable) {
      const auto new_map = maybe_create_local_map(world, graph, config.mapper);
      if (new_map) {
        const LocalMap& map = world.local_map(*new_map);
        ++result.report.local_maps;
        if (config.enable_relocalization) {
          result.report.closures_accepted +=
              relocalize(world, graph, tree, map, config);
          tree.insert(map_descriptor_entries(world, map));
        }
      }
    }

    result.frame_durations_s.push_back(
        std::chrono::duration<double>(Clock::now() - start).count());
    ++result.report.frames_processed;

    pose_prevprev = prev_frame_id >= 0
                        ? std::optional<Isometry3>(
                              world.frame(prev_frame_id).camera_to_world)
                        : std::nullopt;
    prev_frame_id = frame.id;

    if (consecutive_lost >= config.lost_frame_limit) {
      result.report.tracking_halted = true;
      break;
    }
  }

  // poses may have moved in closure corrections: read them back at the end
  for (int id = 0; id < world.frame_count(); ++id) {
    result.trajectory.push_back(world.frame(id).camera_to_world);
  }

  double sum = 0, sum_squared = 0;
  for (double duration : result.frame_durations_s) {
    sum += duration;
    sum_squared += duration * duration;
  }
  const auto count = static_cast<double>(result.frame_durations_s.size());
  if (count > 0) {
    result.report.mean_frame_duration_s = sum / count;
    const double variance =
        std::max(0.0, sum_squared / count - (sum / count) * (sum / count));
    result.report.stddev_frame_duration_s = std::sqrt(variance);
  }

  std::vector<Isometry3> truth;
  if (manifest.ground_truth &&
      manifest.ground_truth->size() >= result.trajectory.size()) {
    truth.assign(manifest.ground_truth->begin(),
                 manifest.ground_truth->begin() + result.trajectory.size());
    result.report.has_ground_truth = true;
    result.report.relative = kitti_relative_errors(result.trajectory, truth);
    if (result.trajectory.size() >= 3) {
      result.report.ate_rmse_m = ate_rmse(result.trajectory, truth);
    }
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_trajectory(result.trajectory, out_dir / "trajectory.txt");

    std::ofstream csv(out_dir / "metrics.csv");
    csv << "frame,duration_s,abs_translation_error_m\n";
    csv << std::setprecision(17);
    for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
      csv << i << "," << result.frame_durations_s[i] << ",";
      if (result.report.has_ground_truth) {
        csv << (result.trajectory[i].translation() -
                truth[i].translation())
                   .norm();
      }
      csv << "\n";
    }

    std::ofstream table(out_dir / "metrics.txt");
    table << format_metrics(result.report);
  }
  return result;
}

std::string format_metrics(const MetricsReport& report) {
  std::ostringstream out;
  out << "frames processed      " << report.frames_processed << "\n"
      << "local maps            " << report.local_maps << "\n"
      << "closures accepted     " << report.closures_accepted << "\n"
      << "tracking halted       " << (report.tracking_halted ? "yes" : "no")
      << "\n"
      << "mean frame time (s)   " << report.mean_frame_duration_s << "\n"
      << "stddev frame time (s) " << report.stddev_frame_duration_s << "\n";
  if (report.has_ground_truth) {
    out << "ATE RMSE (m)          " << report.ate_rmse_m << "\n";
    out << "relative errors (length m, translation %, rotation deg/100m, "
           "windows):\n";
    for (const auto& entry : report.relative.per_length) {
      out << "  " << entry.length << "  " << entry.translation_percent << "  "
          << entry.rotation_deg_per_100m << "  " << entry.windows << "\n";
    }
    out << "mean relative translation error (%)    "
        << report.relative.mean_translation_percent << "\n"
        << "mean relative rotation error (deg/100m) "
        << report.relative.mean_rotation_deg_per_100m << "\n";
  }
  return out.str();
}

}  // namespace sslam
