#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <optional>
#include <stdexcept>

namespace sslam {

using Isometry3 = Eigen::Isometry3d;

// 6-D minimal pose perturbation: translation (m) first, rotation (rad) last.
using TwistVector = Eigen::Matrix<double, 6, 1>;

using Matrix4x6 = Eigen::Matrix<double, 4, 6>;
using Matrix3x4 = Eigen::Matrix<double, 3, 4>;

inline Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

/// Exponential map se(3) -> SE(3), Rodrigues rotation with left-Jacobian
/// coupling on the translation. Taylor fallback below 1e-8 rad.
Isometry3 se3_exp(const TwistVector& twist);

/// Inverse of se3_exp. Throws std::domain_error near the pi cut locus.
TwistVector se3_log(const Isometry3& transform);

/// Minimal solver update: rotation built from the quaternion vector part
/// (w=1, normalized), translation taken verbatim. This is the
/// parameterization under which the stereo Jacobian's rotational block
/// (factor -2 on the skew term) is the exact derivative.
Isometry3 pose_perturbation(const TwistVector& dx);

/// Rotation angle of an isometry in radians, in [0, pi].
double rotation_angle(const Isometry3& transform);

struct PixelCoords {
  double r = 0;  // image row (v)
  double c = 0;  // image column (u)
};

struct Camera {
  double f_x = 0, f_y = 0;  // focal lengths (px)
  double c_x = 0, c_y = 0;  // principal point (px)
  Matrix3x4 projection = Matrix3x4::Zero();
  int width = 0, height = 0;

  static Camera pinhole(double f_x, double f_y, double c_x, double c_y,
                        int width, int height, double baseline_term = 0.0);
};

struct StereoRig {
  Camera cam_left;
  Camera cam_right;
  double baseline = 0;  // B term, pixels*meters (f_x * metric baseline)

  static StereoRig rectified(double f_x, double f_y, double c_x, double c_y,
                             int width, int height, double baseline);
};

struct Projection {
  PixelCoords px;
  bool in_view = false;
};

/// Pinhole projection through the camera's 3x4 matrix. Empty when the
/// pre-division depth is nonpositive; in_view marks the image bounds check.
std::optional<Projection> project(const Eigen::Vector3d& p_c, const Camera& cam);

/// Depth from disparity of a rectified keypoint pair, then back-projection
/// of the left coordinates. Empty when the disparity is below one pixel.
std::optional<Eigen::Vector3d> triangulate(const PixelCoords& left,
                                           const PixelCoords& right,
                                           const StereoRig& rig);

/// 4x6 Jacobian of the stereo reprojection residual
/// (rows: left-c, left-r, right-c, right-r) with respect to a left-side
/// pose perturbation. Throws std::domain_error on nonpositive depth.
Matrix4x6 stereo_jacobian(const Isometry3& world_to_camera,
                          const Eigen::Vector3d& p_c, const StereoRig& rig);

}  // namespace sslam
