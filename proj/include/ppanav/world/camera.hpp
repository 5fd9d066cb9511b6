#pragma once

#include <array>
#include <optional>

#include "ppanav/world/vehicle.hpp"

namespace ppanav::world {

using Vec3 = std::array<double, 3>;

/// Robot-mounted pinhole camera.
///
/// The extrinsics are expressed in the robot body frame used by the
/// original vehicle model: X to the right, Y forward, Z up, origin on the
/// ground under the vehicle reference point. Rotation angles are applied as
/// intrinsic X, then Y, then Z rotations, so the camera axes are the columns
/// of Rx(psi) * Ry(theta) * Rz(phi). The camera looks along its +Z axis.
///
/// With the default [-128, 0, -180] degrees the optical axis points forward
/// and 38 degrees below horizontal, and the image is rolled so that image
/// rows grow toward the vehicle and columns grow toward its left side.
struct CameraModel {
  Vec3 translation{0.0, 0.5, 1.0};
  Vec3 rotation_deg{-128.0, 0.0, -180.0};
  double fov_deg = 60.0;

  /// Throws std::invalid_argument unless 0 < fov < 180.
  void validate() const;

  /// Focal length in pixels for the 256-pixel image.
  double focal_pixels() const;
};

/// World-to-image mapping for one vehicle pose.
class CameraPose {
 public:
  CameraPose(const CameraModel& model, const VehicleState& vehicle);

  /// Camera-frame coordinates (x, y, depth) of a world point (x, y, z-up).
  Vec3 to_camera(const Vec3& world) const;

  /// Continuous image coordinates (row, col) of a camera-frame point with
  /// positive depth. Pixel (r, c) covers [r, r+1) x [c, c+1).
  std::array<double, 2> project(const Vec3& cam) const;

  /// to_camera + project; nullopt behind the near plane.
  std::optional<std::array<double, 2>> project_world(const Vec3& world) const;

  const Vec3& position() const { return position_; }

  static constexpr double kNearPlane = 0.05;

 private:
  Vec3 position_{};
  std::array<Vec3, 3> axes_{};  // camera x, y, z axes in world coordinates
  double focal_ = 0.0;
};

}  // namespace ppanav::world
