#include "ppanav/world/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ppanav::world {
namespace {

using Polygon = std::vector<Vec3>;

// Sutherland-Hodgman against depth > near.
Polygon clip_near(const Polygon& in) {
  constexpr double kNear = CameraPose::kNearPlane;
  Polygon out;
  out.reserve(in.size() + 2);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Vec3& a = in[i];
    const Vec3& b = in[(i + 1) % in.size()];
    const bool a_in = a[2] > kNear;
    const bool b_in = b[2] > kNear;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double t = (kNear - a[2]) / (b[2] - a[2]);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), kNear});
    }
  }
  return out;
}

// Scanline fill of a convex polygon given in continuous (row, col).
void fill_convex(const std::vector<std::array<double, 2>>& poly, std::uint8_t value,
                 ppa::GrayPlane& frame) {
  if (poly.size() < 3) return;
  double r_lo = poly[0][0], r_hi = poly[0][0];
  for (const auto& p : poly) {
    r_lo = std::min(r_lo, p[0]);
    r_hi = std::max(r_hi, p[0]);
  }
  const int row_first = std::max(0, static_cast<int>(std::ceil(r_lo - 0.5)));
  const int row_last = std::min(ppa::kPlaneSize - 1, static_cast<int>(std::floor(r_hi - 0.5)));
  for (int r = row_first; r <= row_last; ++r) {
    const double sample = r + 0.5;
    double c_lo = std::numeric_limits<double>::infinity();
    double c_hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % poly.size()];
      const double lo = std::min(a[0], b[0]);
      const double hi = std::max(a[0], b[0]);
      if (sample < lo || sample > hi) continue;
      double c;
      if (hi - lo < 1e-12) {
        c_lo = std::min({c_lo, a[1], b[1]});
        c_hi = std::max({c_hi, a[1], b[1]});
        continue;
      }
      c = a[1] + (sample - a[0]) / (b[0] - a[0]) * (b[1] - a[1]);
      c_lo = std::min(c_lo, c);
      c_hi = std::max(c_hi, c);
    }
    if (c_lo > c_hi) continue;
    const int col_first = std::max(0, static_cast<int>(std::ceil(c_lo - 0.5)));
    const int col_last = std::min(ppa::kPlaneSize - 1, static_cast<int>(std::floor(c_hi - 0.5)));
    for (int c = col_first; c <= col_last; ++c) frame.set(r, c, value);
  }
}

void draw_facet(const CameraPose& camera, const Polygon& facet_cam, std::uint8_t value,
                ppa::GrayPlane& frame) {
  const Polygon clipped = clip_near(facet_cam);
  if (clipped.size() < 3) return;
  std::vector<std::array<double, 2>> image;
  image.reserve(clipped.size());
  for (const auto& p : clipped) image.push_back(camera.project(p));
  fill_convex(image, value, frame);
}

// Cheap rejection: whole cone behind the camera or far outside the view cone.
bool possibly_visible(const CameraPose& camera, const Cone& cone, double half_fov_tan) {
  const Vec3 centre = camera.to_camera({cone.cx, cone.cy, cone.height / 2.0});
  const double reach = std::hypot(cone.base_radius, cone.height);
  if (centre[2] + reach <= CameraPose::kNearPlane) return false;
  const double depth = std::max(centre[2], 0.0);
  const double margin = reach * std::sqrt(1.0 + half_fov_tan * half_fov_tan);
  return std::abs(centre[0]) <= depth * half_fov_tan + margin &&
         std::abs(centre[1]) <= depth * half_fov_tan + margin;
}

void draw_cone(const CameraPose& camera, const Cone& cone, ppa::GrayPlane& frame) {
  const Vec3 apex = camera.to_camera({cone.cx, cone.cy, cone.height});
  const Vec3 base_centre = camera.to_camera({cone.cx, cone.cy, 0.0});
  std::array<Vec3, kConeSegments> ring;
  for (int i = 0; i < kConeSegments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / kConeSegments;
    ring[i] = camera.to_camera(
        {cone.cx + cone.base_radius * std::cos(a), cone.cy + cone.base_radius * std::sin(a), 0.0});
  }
  for (int i = 0; i < kConeSegments; ++i) {
    const Vec3& a = ring[i];
    const Vec3& b = ring[(i + 1) % kConeSegments];
    draw_facet(camera, {apex, a, b}, cone.albedo, frame);
    draw_facet(camera, {base_centre, a, b}, cone.albedo, frame);
  }
}

}  // namespace

ppa::GrayPlane render_frame(const WorldScene& scene) {
  ppa::GrayPlane frame(scene.ground_albedo);
  const CameraPose camera(scene.camera, scene.vehicle);
  const double half_fov_tan = std::tan(scene.camera.fov_deg * std::numbers::pi / 360.0);

  struct Item {
    double depth;
    std::size_t index;
  };
  std::vector<Item> visible;
  for (std::size_t i = 0; i < scene.cones.size(); ++i) {
    const Cone& c = scene.cones[i];
    if (!possibly_visible(camera, c, half_fov_tan)) continue;
    visible.push_back({camera.to_camera({c.cx, c.cy, 0.0})[2], i});
  }
  // Far to near; ties keep scene order.
  std::stable_sort(visible.begin(), visible.end(),
                   [](const Item& a, const Item& b) { return a.depth > b.depth; });
  for (const auto& item : visible) draw_cone(camera, scene.cones[item.index], frame);
  return frame;
}

}  // namespace ppanav::world
