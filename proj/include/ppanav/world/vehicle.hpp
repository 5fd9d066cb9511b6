#pragma once

#include <numbers>

namespace ppanav::world {

struct VehicleConfig {
  double wheelbase = 0.6;
  double vehicle_radius = 0.3;
  double steer_limit = std::numbers::pi / 6.0;  // 30 degrees
  double wheel_radius = 0.1;
};

/// Pose in the world plane plus actuator state. Heading is measured
/// counter-clockwise from +x; positive steer turns left.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double steer = 0.0;
  double speed = 0.0;

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

double clamp_steer(double steer, const VehicleConfig& config);

/// How the "dVel" speed setting maps to ground speed.
enum class SpeedUnit { kRevolutionsPerSecond, kRadiansPerSecond };

double ground_speed(double d_vel, SpeedUnit unit, const VehicleConfig& config);

/// Kinematic bicycle step (exact arc over dt): the commanded steer is clamped
/// and stored, heading turns by speed/wheelbase * tan(steer) * dt and
/// position follows the circular arc between the two headings. Throws std::invalid_argument on
/// dt <= 0.
VehicleState step_vehicle(const VehicleState& v, double steer_cmd, double dt,
                          const VehicleConfig& config);

}  // namespace ppanav::world
