#include "sslam/relocalizer.hpp"

#include <algorithm>
#include <map>

namespace sslam {

std::vector<CandidateOverlap> find_closure_candidates(
    const HbstTree& tree, const WorldMap& world, const LocalMap& current,
    double min_overlap, int temporal_gap, int query_max_distance) {
  std::vector<Descriptor256> queries;
  std::vector<int> query_landmarks;
  for (int landmark_id : current.landmark_ids) {
    for (const auto& descriptor : world.landmark(landmark_id).descriptors) {
      queries.push_back(descriptor);
      query_landmarks.push_back(landmark_id);
    }
  }
  std::vector<CandidateOverlap> candidates;
  if (queries.empty()) return candidates;

  const auto matches = tree.query(queries, query_max_distance);
  std::map<int, std::vector<HbstTree::Match>> per_map;
  for (const auto& match : matches) {
    if (match.local_map_id > current.id - temporal_gap) continue;
    per_map[match.local_map_id].push_back(match);
  }
  for (auto& [map_id, map_matches] : per_map) {
    const double overlap =
        static_cast<double>(map_matches.size()) / queries.size();
    if (overlap < min_overlap) continue;

    // collapse descriptor hits to one pair per current landmark
    std::map<int, HbstTree::Match> best_per_landmark;
    for (const auto& match : map_matches) {
      const int current_landmark = query_landmarks[match.query_index];
      const auto it = best_per_landmark.find(current_landmark);
      if (it == best_per_landmark.end() || match.distance < it->second.distance) {
        best_per_landmark[current_landmark] = match;
      }
    }
    CandidateOverlap candidate;
    candidate.local_map_id = map_id;
    candidate.overlap = overlap;
    for (const auto& [current_landmark, match] : best_per_landmark) {
      candidate.landmark_pairs.emplace_back(current_landmark,
                                            match.landmark_id);
    }
    candidates.push_back(std::move(candidate));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.overlap > b.overlap; });
  return candidates;
}

IcpResult align_icp(
    const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& correspondences,
    double inlier_threshold) {
  constexpr int kRounds = 20;
  IcpResult result;
  const int n = static_cast<int>(correspondences.size());
  if (n < 3) {
    result.degenerate = true;
    return result;
  }

  // residual-damped weights: correspondences beyond the inlier threshold
  // under the current estimate only contribute proportionally, so a
  // contaminated initial set cannot drag the fit away from the consensus
  const auto weight_of = [&](int k) {
    const double residual = (result.transform * correspondences[k].first -
                             correspondences[k].second)
                                .norm();
    return residual < inlier_threshold ? 1.0 : inlier_threshold / residual;
  };

  std::vector<bool> inlier(n, true);
  for (int round = 0; round < kRounds; ++round) {
    // the per-round estimate iterates the damped weighted fit to
    // convergence before the inlier set is re-classified: a single fit
    // from a poor initial transform would leave every residual above
    // the threshold and empty the inlier set prematurely
    constexpr int kInnerIterations = 30;
    int count = 0;
    for (int inner = 0; inner < kInnerIterations; ++inner) {
      Eigen::Vector3d centroid_i = Eigen::Vector3d::Zero();
      Eigen::Vector3d centroid_j = Eigen::Vector3d::Zero();
      std::vector<double> weights(n, 0.0);
      double weight_sum = 0;
      count = 0;
      for (int k = 0; k < n; ++k) {
        if (!inlier[k]) continue;
        weights[k] = weight_of(k);
        centroid_i += weights[k] * correspondences[k].first;
        centroid_j += weights[k] * correspondences[k].second;
        weight_sum += weights[k];
        ++count;
      }
      if (count < 3) break;
      centroid_i /= weight_sum;
      centroid_j /= weight_sum;

      Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
      for (int k = 0; k < n; ++k) {
        if (!inlier[k]) continue;
        cross += weights[k] * (correspondences[k].second - centroid_j) *
                 (correspondences[k].first - centroid_i).transpose();
      }
      const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
          cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::Matrix3d rotation = svd.matrixU() * svd.matrixV().transpose();
      if (rotation.determinant() < 0) {
        Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
        flip(2, 2) = -1;
        rotation = svd.matrixU() * flip * svd.matrixV().transpose();
      }
      result.transform.linear() = rotation;
      result.transform.translation() = centroid_j - rotation * centroid_i;
    }
    if (count < 3) {
      result.degenerate = true;
      return result;
    }

    // re-classify
    for (int k = 0; k < n; ++k) {
      const double residual = (result.transform * correspondences[k].first -
                               correspondences[k].second)
                                  .norm();
      inlier[k] = residual < inlier_threshold;
    }
  }

  result.inliers = 0;
  double error_sum = 0;
  for (int k = 0; k < n; ++k) {
    if (!inlier[k]) continue;
    ++result.inliers;
    error_sum += (result.transform * correspondences[k].first -
                  correspondences[k].second)
                     .squaredNorm();
  }
  if (result.inliers < 3) {
    result.degenerate = true;
    return result;
  }
  result.mean_error = error_sum / result.inliers;
  return result;
}

std::optional<ClosureConstraint> validate_closure(const IcpResult& result,
                                                  int map_i, int map_j,
                                                  int min_inliers,
                                                  double max_mean_error) {
  if (result.degenerate || result.inliers < min_inliers ||
      result.mean_error > max_mean_error) {
    return std::nullopt;
  }
  ClosureConstraint constraint;
  constraint.map_i = map_i;
  constraint.map_j = map_j;
  constraint.transform_i2j = result.transform;
  constraint.inliers = result.inliers;
  constraint.mean_error = result.mean_error;
  return constraint;
}

}  // namespace sslam
