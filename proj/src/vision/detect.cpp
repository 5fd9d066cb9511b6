#include "ppanav/vision/detect.hpp"

#include <cmath>
#include <stdexcept>

#include "ppanav/ppa/ops.hpp"

namespace ppanav::vision {

void AreaConfig::validate() const {
  const auto within = [](int v) { return v >= 0 && v < ppa::kPlaneSize; };
  for (int v : {distant_x_max, forbidden_x_min, safe_right_max, safe_left_min, right_y_min,
                right_y_max, left_y_min, left_y_max}) {
    if (!within(v)) throw std::invalid_argument("area bound outside [0,255]");
  }
  if (!(distant_x_max < forbidden_x_min)) {
    throw std::invalid_argument("distant area must end above the forbidden area");
  }
  if (!(safe_right_max < right_y_min && right_y_min <= right_y_max && right_y_max < left_y_min &&
        left_y_min <= left_y_max && left_y_max < safe_left_min)) {
    throw std::invalid_argument("column bands must be ordered safe < right < left < safe");
  }
}

int classify_direction(int y, const AreaConfig& areas) {
  if (y >= areas.right_y_min && y <= areas.right_y_max) return -1;
  if (y >= areas.left_y_min && y <= areas.left_y_max) return +1;
  return 0;
}

bool in_valid_area(ppa::PixelCoord bottom, const AreaConfig& areas) {
  return areas.distant_x_max < bottom.x && bottom.x < areas.forbidden_x_min &&
         areas.safe_right_max < bottom.y && bottom.y < areas.safe_left_min;
}

double pixel_distance_to_robot(ppa::PixelCoord p) {
  const double dx = kRobotPixel.x - p.x;
  const double dy = kRobotPixel.y - p.y;
  return std::sqrt(dx * dx + dy * dy);
}

ObstacleReport closest_obstacle(const ppa::BitPlane& segmented, const AreaConfig& areas,
                                int* components_seen) {
  ObstacleReport report;
  ppa::BitPlane remaining = segmented;
  int count = 0;
  bool found = false;
  while (ppa::global_or(remaining)) {
    const auto event = ppa::scan_first_event(remaining);
    const ppa::BitPlane component = ppa::flood(ppa::load_point(*event), remaining);
    const ppa::PixelCoord bottom = ppa::scan_bounding_box(component).bottom_center();
    if (in_valid_area(bottom, areas)) {
      const double dis = pixel_distance_to_robot(bottom);
      if (dis < report.closest_dis) {
        report.closest_dis = dis;
        report.closest_x = bottom.x;
        report.closest_y = bottom.y;
        found = true;
      }
    }
    remaining = ppa::exclusive_or(remaining, component);
    ++count;
  }
  if (found) report.direction = classify_direction(static_cast<int>(report.closest_y), areas);
  if (components_seen != nullptr) *components_seen = count;
  return report;
}

ppa::BitPlane segment(const ppa::GrayPlane& frame, const DetectorConfig& config) {
  return ppa::filter_noise(ppa::threshold(frame, config.threshold, config.polarity));
}

ObstacleReport detect_closest(const ppa::GrayPlane& frame, const DetectorConfig& config) {
  return closest_obstacle(segment(frame, config), config.areas);
}

}  // namespace ppanav::vision
