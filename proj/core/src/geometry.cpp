#include "sslam/geometry.hpp"

#include <cmath>

namespace sslam {

namespace {
constexpr double kSmallAngle = 1e-8;
}

Isometry3 se3_exp(const TwistVector& twist) {
  const Eigen::Vector3d v = twist.head<3>();
  const Eigen::Vector3d omega = twist.tail<3>();
  const double angle = omega.norm();

  Eigen::Matrix3d rotation;
  Eigen::Matrix3d coupling;  // left Jacobian V
  const Eigen::Matrix3d s = skew(omega);
  if (angle < kSmallAngle) {
    rotation = Eigen::Matrix3d::Identity() + s;
    coupling = Eigen::Matrix3d::Identity() + 0.5 * s;
  } else {
    const double a2 = angle * angle;
    rotation = Eigen::Matrix3d::Identity() + std::sin(angle) / angle * s +
               (1.0 - std::cos(angle)) / a2 * s * s;
    coupling = Eigen::Matrix3d::Identity() + (1.0 - std::cos(angle)) / a2 * s +
               (angle - std::sin(angle)) / (a2 * angle) * s * s;
  }

  Isometry3 transform = Isometry3::Identity();
  transform.linear() = rotation;
  transform.translation() = coupling * v;
  return transform;
}

TwistVector se3_log(const Isometry3& transform) {
  const Eigen::Matrix3d rotation = transform.linear();
  const double cos_angle =
      std::clamp((rotation.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double angle = std::acos(cos_angle);
  if (angle > M_PI - 1e-6) {
    throw std::domain_error("se3_log: log at cut locus");
  }

  Eigen::Vector3d omega;
  Eigen::Matrix3d v_inv;
  if (angle < kSmallAngle) {
    omega = 0.5 * Eigen::Vector3d(rotation(2, 1) - rotation(1, 2),
                                  rotation(0, 2) - rotation(2, 0),
                                  rotation(1, 0) - rotation(0, 1));
    v_inv = Eigen::Matrix3d::Identity() - 0.5 * skew(omega);
  } else {
    omega = angle / (2.0 * std::sin(angle)) *
            Eigen::Vector3d(rotation(2, 1) - rotation(1, 2),
                            rotation(0, 2) - rotation(2, 0),
                            rotation(1, 0) - rotation(0, 1));
    const Eigen::Matrix3d s = skew(omega);
    const double a2 = angle * angle;
    v_inv = Eigen::Matrix3d::Identity() - 0.5 * s +
            (1.0 - angle * std::cos(angle * 0.5) / (2.0 * std::sin(angle * 0.5))) /
                a2 * s * s;
  }

  TwistVector twist;
  twist.head<3>() = v_inv * transform.translation();
  twist.tail<3>() = omega;
  return twist;
}

Isometry3 pose_perturbation(const TwistVector& dx) {
  Eigen::Quaterniond q(1.0, dx[3], dx[4], dx[5]);
  q.normalize();
  Isometry3 transform = Isometry3::Identity();
  transform.linear() = q.toRotationMatrix();
  transform.translation() = dx.head<3>();
  return transform;
}

double rotation_angle(const Isometry3& transform) {
  // quaternion atan2 form: well conditioned near zero where the trace
  // acos formulation loses half the significant digits
  const Eigen::Quaterniond q(transform.linear());
  return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

Camera Camera::pinhole(double f_x, double f_y, double c_x, double c_y,
                       int width, int height, double baseline_term) {
  Camera cam;
  cam.f_x = f_x;
  cam.f_y = f_y;
  cam.c_x = c_x;
  cam.c_y = c_y;
  cam.width = width;
  cam.height = height;
  cam.projection << f_x, 0, c_x, -baseline_term, 0, f_y, c_y, 0, 0, 0, 1, 0;
  return cam;
}

StereoRig StereoRig::rectified(double f_x, double f_y, double c_x, double c_y,
                               int width, int height, double baseline) {
  StereoRig rig;
  rig.cam_left = Camera::pinhole(f_x, f_y, c_x, c_y, width, height);
  rig.cam_right = Camera::pinhole(f_x, f_y, c_x, c_y, width, height, baseline);
  rig.baseline = baseline;
  return rig;
}

std::optional<Projection> project(const Eigen::Vector3d& p_c, const Camera& cam) {
  const Eigen::Vector3d h = cam.projection * p_c.homogeneous();
  if (h.z() <= 0) {
    return std::nullopt;
  }
  Projection result;
  result.px.c = h.x() / h.z();
  result.px.r = h.y() / h.z();
  result.in_view = result.px.c >= 0 && result.px.c < cam.width &&
                   result.px.r >= 0 && result.px.r < cam.height;
  return result;
}

std::optional<Eigen::Vector3d> triangulate(const PixelCoords& left,
                                           const PixelCoords& right,
                                           const StereoRig& rig) {
  const double disparity = left.c - right.c;
  if (disparity < 1.0) {
    return std::nullopt;  // point at infinity
  }
  const Camera& cam = rig.cam_left;
  Eigen::Vector3d p_c;
  p_c.z() = rig.baseline / disparity;
  p_c.x() = p_c.z() / cam.f_x * (left.c - cam.c_x);
  p_c.y() = p_c.z() / cam.f_y * (left.r - cam.c_y);
  return p_c;
}

Matrix4x6 stereo_jacobian(const Isometry3& /*world_to_camera*/,
                          const Eigen::Vector3d& p_c, const StereoRig& rig) {
  const Eigen::Vector3d h_left = rig.cam_left.projection * p_c.homogeneous();
  const Eigen::Vector3d h_right = rig.cam_right.projection * p_c.homogeneous();
  if (h_left.z() <= 0 || h_right.z() <= 0) {
    throw std::domain_error("stereo_jacobian: behind camera");
  }

  Eigen::Matrix<double, 2, 3> homogeneous_left;
  homogeneous_left << 1.0 / h_left.z(), 0, -h_left.x() / (h_left.z() * h_left.z()),
      0, 1.0 / h_left.z(), -h_left.y() / (h_left.z() * h_left.z());
  Eigen::Matrix<double, 2, 3> homogeneous_right;
  homogeneous_right << 1.0 / h_right.z(), 0,
      -h_right.x() / (h_right.z() * h_right.z()), 0, 1.0 / h_right.z(),
      -h_right.y() / (h_right.z() * h_right.z());

  Eigen::Matrix<double, 4, 4> image_block;
  image_block.topRows<2>() = homogeneous_left * rig.cam_left.projection;
  image_block.bottomRows<2>() = homogeneous_right * rig.cam_right.projection;

  Eigen::Matrix<double, 4, 6> j_t = Eigen::Matrix<double, 4, 6>::Zero();
  j_t.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();
  j_t.block<3, 3>(0, 3) = -2.0 * skew(p_c);
  return image_block * j_t;
}

}  // namespace sslam
