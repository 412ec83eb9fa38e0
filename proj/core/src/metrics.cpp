#include "sslam/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace sslam {

namespace {
constexpr double kLengths[] = {100, 200, 300, 400, 500, 600, 700, 800};
}

RelativeErrors kitti_relative_errors(const std::vector<Isometry3>& estimate,
                                     const std::vector<Isometry3>& ground_truth) {
  if (estimate.size() != ground_truth.size() || estimate.size() < 2) {
    throw std::invalid_argument("kitti_relative_errors: need equal lengths >= 2");
  }
  const int n = static_cast<int>(estimate.size());

  // cumulative ground-truth arc length
  std::vector<double> distance(n, 0.0);
  for (int i = 1; i < n; ++i) {
    distance[i] = distance[i - 1] + (ground_truth[i].translation() -
                                     ground_truth[i - 1].translation())
                                        .norm();
  }

  RelativeErrors result;
  for (const double length : kLengths) {
    RelativeErrors::PerLength bucket;
    bucket.length = length;
    int end = 0;
    for (int start = 0; start < n; ++start) {
      // first frame at or beyond the target arc length
      if (end <= start) end = start + 1;
      while (end < n && distance[end] - distance[start] < length) ++end;
      if (end >= n) break;

      const Isometry3 gt_rel = ground_truth[start].inverse() * ground_truth[end];
      const Isometry3 est_rel = estimate[start].inverse() * estimate[end];
      const Isometry3 error = gt_rel.inverse() * est_rel;
      bucket.translation_percent += error.translation().norm() / length * 100.0;
      bucket.rotation_deg_per_100m +=
          rotation_angle(error) * 180.0 / M_PI / length * 100.0;
      ++bucket.windows;
    }
    if (bucket.windows > 0) {
      result.mean_translation_percent += bucket.translation_percent;
      result.mean_rotation_deg_per_100m += bucket.rotation_deg_per_100m;
      result.total_windows += bucket.windows;
      bucket.translation_percent /= bucket.windows;
      bucket.rotation_deg_per_100m /= bucket.windows;
      result.per_length.push_back(bucket);
    }
  }
  if (result.total_windows > 0) {
    result.mean_translation_percent /= result.total_windows;
    result.mean_rotation_deg_per_100m /= result.total_windows;
  }
  return result;
}

double ate_rmse(const std::vector<Isometry3>& estimate,
                const std::vector<Isometry3>& ground_truth) {
  if (estimate.size() != ground_truth.size() || estimate.size() < 3) {
    throw std::invalid_argument("ate_rmse: need equal lengths >= 3");
  }
  const int n = static_cast<int>(estimate.size());

  Eigen::Vector3d centroid_est = Eigen::Vector3d::Zero();
  Eigen::Vector3d centroid_gt = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    centroid_est += estimate[i].translation();
    centroid_gt += ground_truth[i].translation();
  }
  centroid_est /= n;
  centroid_gt /= n;

  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
  for (int i = 0; i < n; ++i) {
    cross += (ground_truth[i].translation() - centroid_gt) *
             (estimate[i].translation() - centroid_est).transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d rotation = svd.matrixU() * svd.matrixV().transpose();
  if (rotation.determinant() < 0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1;
    rotation = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  const Eigen::Vector3d translation = centroid_gt - rotation * centroid_est;

  double sum = 0;
  for (int i = 0; i < n; ++i) {
    sum += (rotation * estimate[i].translation() + translation -
            ground_truth[i].translation())
               .squaredNorm();
  }
  return std::sqrt(sum / n);
}

double translation_rmse(const std::vector<Isometry3>& estimate,
                        const std::vector<Isometry3>& ground_truth) {
  if (estimate.size() != ground_truth.size() || estimate.empty()) {
    throw std::invalid_argument("translation_rmse: need equal nonzero lengths");
  }
  double sum = 0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    sum += (estimate[i].translation() - ground_truth[i].translation())
               .squaredNorm();
  }
  return std::sqrt(sum / estimate.size());
}

}  // namespace sslam
