#include "ppanav/nav/navigator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppanav::nav {

void NavParams::validate() const {
  if (!(d_safe > 0.0 && e_safe > 0.0 && k_safe > 0.0 && k_steer > 0.0)) {
    throw std::invalid_argument("d_safe, e_safe, k_safe and k_steer must be positive");
  }
  if (!(d_steer > 0.0) || !(steer_limit > 0.0)) {
    throw std::invalid_argument("d_steer and steer_limit must be positive");
  }
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kTargetNav: return "target_nav";
    case Mode::kAvoidance: return "avoidance";
    case Mode::kOnTarget: return "on_target";
    case Mode::kIdle: return "idle";
    case Mode::kCruise: return "cruise";
  }
  return "unknown";
}

double raw_avoidance_steer(int direction, double distance, const NavParams& p) {
  if (direction == 0) return 0.0;
  if (distance <= 0.0) {
    return direction > 0 ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  }
  const double k = direction * (p.k_safe / distance);
  return -p.k_steer * k;
}

SteerCommand avoidance_steer(const vision::ObstacleReport& report, const NavParams& p) {
  const double raw = raw_avoidance_steer(report.direction, report.closest_dis, p);
  return {std::clamp(raw * p.steer_scale(), -p.steer_limit, p.steer_limit), Mode::kAvoidance};
}

TargetSteer target_steer(world::Point2 pos, double heading, world::Point2 target, const NavParams& p) {
  TargetSteer out;
  const double dx = target.x - pos.x;
  const double dy = target.y - pos.y;
  out.bearing = std::atan2(dy, dx);
  out.distance = std::hypot(dx, dy);
  if (out.distance <= p.e_safe) {
    out.command = {0.0, Mode::kOnTarget};
  } else {
    const double err = world::wrap_angle(out.bearing - heading);
    out.command = {std::clamp(err, -p.steer_limit, p.steer_limit), Mode::kTargetNav};
  }
  return out;
}

bool obstacle_near(const vision::ObstacleReport& report, const NavParams& p) {
  return report.direction != 0 && report.closest_dis < p.d_safe;
}

NavDecision navigate_step(const vision::ObstacleReport& report, world::Pose pose,
                          std::span<const world::Point2> targets, std::size_t target_index,
                          const NavParams& p, bool reactive) {
  NavDecision d;
  d.target_index = target_index;
  const bool targets_left = target_index < targets.size();

  if (!targets_left && !reactive) {
    d.command = {0.0, Mode::kIdle};
    return d;
  }
  if (obstacle_near(report, p)) {
    d.command = avoidance_steer(report, p);
    d.drive = true;
    if (targets_left) {
      d.target_distance = std::hypot(targets[target_index].x - pose.x, targets[target_index].y - pose.y);
    }
    return d;
  }
  if (!targets_left) {
    d.command = {0.0, Mode::kCruise};
    d.drive = true;
    return d;
  }
  const TargetSteer ts = target_steer({pose.x, pose.y}, pose.heading, targets[target_index], p);
  d.command = ts.command;
  d.target_distance = ts.distance;
  if (ts.command.mode == Mode::kOnTarget) {
    d.target_index = target_index + 1;
    d.drive = d.target_index < targets.size() || reactive;
  } else {
    d.drive = true;
  }
  return d;
}

}  // namespace ppanav::nav
