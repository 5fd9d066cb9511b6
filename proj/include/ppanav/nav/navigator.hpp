#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>

#include "ppanav/vision/detect.hpp"
#include "ppanav/world/scene.hpp"

namespace ppanav::nav {

struct NavParams {
  double d_safe = 200.0;   // pixels; avoidance engages below this
  double e_safe = 1.0;     // meters; target reached at or below this
  double k_safe = 100.0;
  double k_steer = 20.0;
  double d_vel = 1.0;      // wheel speed setting
  double d_steer = 0.1;    // radians; raw avoidance output is scaled by d_steer / 2
  double steer_limit = std::numbers::pi / 6.0;

  double steer_scale() const { return d_steer / 2.0; }

  /// Throws std::invalid_argument unless the gains and thresholds are positive.
  void validate() const;
};

enum class Mode : std::uint8_t {
  kTargetNav = 0,
  kAvoidance = 1,
  kOnTarget = 2,
  kIdle = 3,
  kCruise = 4,  // reactive runs: nothing near, drive straight
};

std::string_view to_string(Mode m);

struct SteerCommand {
  double theta_steer = 0.0;
  Mode mode = Mode::kIdle;
};

/// Unclamped, dimensionless avoidance output: -k_steer * direction * k_safe / distance.
/// A zero distance yields an infinite magnitude pointing away from the obstacle.
double raw_avoidance_steer(int direction, double distance, const NavParams& p);

/// Scales the raw output to radians and clamps it to the steer limit.
SteerCommand avoidance_steer(const vision::ObstacleReport& report, const NavParams& p);

struct TargetSteer {
  SteerCommand command;
  double bearing = 0.0;   // atan2 toward the target
  double distance = 0.0;  // Euclidean distance to the target
};

TargetSteer target_steer(world::Point2 pos, double heading, world::Point2 target, const NavParams& p);

/// Whether the report calls for avoidance.
bool obstacle_near(const vision::ObstacleReport& report, const NavParams& p);

struct NavDecision {
  SteerCommand command;
  std::size_t target_index = 0;
  bool drive = false;     // false commands zero speed
  double target_distance = 0.0;
};

/// One control tick. Precedence: finished target list (idle, unless
/// reactive), near obstacle (avoidance), reactive cruise, target steering.
/// Reaching a target advances the index by exactly one.
NavDecision navigate_step(const vision::ObstacleReport& report, world::Pose pose,
                          std::span<const world::Point2> targets, std::size_t target_index,
                          const NavParams& p, bool reactive = false);

}  // namespace ppanav::nav
