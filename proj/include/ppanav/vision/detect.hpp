#pragma once

#include <cstdint>

#include "ppanav/ppa/kernels.hpp"
#include "ppanav/ppa/plane.hpp"

namespace ppanav::vision {

/// Reported distance when no component passes the area gate.
inline constexpr double kNoObstacleDistance = 1.0e6;

/// Image bands used to gate bounding-box bottom centres. Rows bound the
/// distant (top) and forbidden (bottom) strips; columns bound the two safe
/// strips and the right/left halves of the valid area.
struct AreaConfig {
  int distant_x_max = 50;
  int forbidden_x_min = 240;
  int safe_right_max = 10;   // right safe band is [0, safe_right_max]
  int safe_left_min = 245;   // left safe band is [safe_left_min, 255]
  int right_y_min = 15;
  int right_y_max = 127;
  int left_y_min = 128;
  int left_y_max = 240;

  /// Throws std::invalid_argument if the bands are out of order or overlap.
  void validate() const;

  friend bool operator==(const AreaConfig&, const AreaConfig&) = default;
};

struct ObstacleReport {
  double closest_x = 0.0;
  double closest_y = 0.0;
  double closest_dis = kNoObstacleDistance;
  int direction = 0;  // -1 right area, +1 left area, 0 none

  friend bool operator==(const ObstacleReport&, const ObstacleReport&) = default;
};

struct DetectorConfig {
  std::uint8_t threshold = 100;
  ppa::Polarity polarity = ppa::Polarity::kBelow;
  AreaConfig areas;
};

/// The robot's own position in image coordinates.
inline constexpr ppa::PixelCoord kRobotPixel{255, 127};

/// -1 if y lies in the right band, +1 in the left band, 0 otherwise.
int classify_direction(int y, const AreaConfig& areas);

/// Whether a bottom centre lies strictly inside the valid area.
bool in_valid_area(ppa::PixelCoord bottom, const AreaConfig& areas);

double pixel_distance_to_robot(ppa::PixelCoord p);

/// Closest-obstacle search over an already segmented plane. Components are
/// peeled off one at a time in row-major discovery order; on equal
/// distance the earlier component wins. `components_seen`, when given,
/// receives the number of components visited.
ObstacleReport closest_obstacle(const ppa::BitPlane& segmented, const AreaConfig& areas,
                                 int* components_seen = nullptr);

/// Threshold, filter, then closest_obstacle.
ObstacleReport detect_closest(const ppa::GrayPlane& frame, const DetectorConfig& config);

ppa::BitPlane segment(const ppa::GrayPlane& frame, const DetectorConfig& config);

}  // namespace ppanav::vision
