#pragma once

#include "ppanav/ppa/plane.hpp"
#include "ppanav/world/scene.hpp"

namespace ppanav::world {

/// Number of segments approximating a cone's base circle.
inline constexpr int kConeSegments = 48;

/// Renders the camera view of the scene: uniform ground with each cone's
/// silhouette filled in its albedo, far cones first. A pixel is covered
/// when its centre lies inside the projected silhouette. Geometry behind
/// the near plane is clipped.
ppa::GrayPlane render_frame(const WorldScene& scene);

}  // namespace ppanav::world
