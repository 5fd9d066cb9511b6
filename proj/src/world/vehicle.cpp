#include "ppanav/world/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppanav::world {

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = std::remainder(a, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

double clamp_steer(double steer, const VehicleConfig& config) {
  if (std::isnan(steer)) return 0.0;
  return std::clamp(steer, -config.steer_limit, config.steer_limit);
}

double ground_speed(double d_vel, SpeedUnit unit, const VehicleConfig& config) {
  const double omega = unit == SpeedUnit::kRevolutionsPerSecond
                           ? d_vel * 2.0 * std::numbers::pi
                           : d_vel;
  return omega * config.wheel_radius;
}

VehicleState step_vehicle(const VehicleState& v, double steer_cmd, double dt,
                          const VehicleConfig& config) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_vehicle: dt must be positive");
  VehicleState out = v;
  out.steer = clamp_steer(steer_cmd, config);
  const double turn = (v.speed / config.wheelbase) * std::tan(out.steer) * dt;
  const double dist = v.speed * dt;
  if (std::abs(turn) < 1e-9) {
    out.x += dist * std::cos(v.heading);
    out.y += dist * std::sin(v.heading);
  } else {
    // exact arc of radius dist / turn
    const double r = dist / turn;
    out.x += r * (std::sin(v.heading + turn) - std::sin(v.heading));
    out.y -= r * (std::cos(v.heading + turn) - std::cos(v.heading));
  }
  out.heading = wrap_angle(v.heading + turn);
  return out;
}

}  // namespace ppanav::world
