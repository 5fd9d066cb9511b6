#include "ppanav/world/camera.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ppanav/ppa/plane.hpp"

namespace ppanav::world {
namespace {

using Mat3 = std::array<Vec3, 3>;  // row-major

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
}
Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
}
Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

void CameraModel::validate() const {
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) {
    throw std::invalid_argument("camera field of view must lie in (0, 180) degrees");
  }
}

double CameraModel::focal_pixels() const {
  return (ppa::kPlaneSize / 2.0) / std::tan(deg(fov_deg) / 2.0);
}

CameraPose::CameraPose(const CameraModel& model, const VehicleState& vehicle)
    : focal_(model.focal_pixels()) {
  // Body frame axes in world coordinates: X right, Y forward, Z up.
  const double ch = std::cos(vehicle.heading), sh = std::sin(vehicle.heading);
  const Vec3 right{sh, -ch, 0.0};
  const Vec3 forward{ch, sh, 0.0};
  const Vec3 up{0.0, 0.0, 1.0};

  const Mat3 r = multiply(multiply(rot_x(deg(model.rotation_deg[0])), rot_y(deg(model.rotation_deg[1]))),
                          rot_z(deg(model.rotation_deg[2])));
  for (int axis = 0; axis < 3; ++axis) {
    // Column `axis` of r, expressed in the body frame, mapped to world.
    for (int k = 0; k < 3; ++k) {
      axes_[axis][k] = r[0][axis] * right[k] + r[1][axis] * forward[k] + r[2][axis] * up[k];
    }
  }
  const auto& t = model.translation;
  for (int k = 0; k < 3; ++k) {
    position_[k] = t[0] * right[k] + t[1] * forward[k] + t[2] * up[k];
  }
  position_[0] += vehicle.x;
  position_[1] += vehicle.y;
}

Vec3 CameraPose::to_camera(const Vec3& world) const {
  const Vec3 d{world[0] - position_[0], world[1] - position_[1], world[2] - position_[2]};
  return {dot(d, axes_[0]), dot(d, axes_[1]), dot(d, axes_[2])};
}

std::array<double, 2> CameraPose::project(const Vec3& cam) const {
  constexpr double kCentre = ppa::kPlaneSize / 2.0;
  return {kCentre - focal_ * cam[1] / cam[2], kCentre + focal_ * cam[0] / cam[2]};
}

std::optional<std::array<double, 2>> CameraPose::project_world(const Vec3& world) const {
  const Vec3 cam = to_camera(world);
  if (cam[2] <= kNearPlane) return std::nullopt;
  return project(cam);
}

}  // namespace ppanav::world
