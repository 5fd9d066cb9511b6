#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ppanav/world/camera.hpp"
#include "ppanav/world/vehicle.hpp"

namespace ppanav::world {

struct Cone {
  double cx = 0.0;
  double cy = 0.0;
  double base_radius = 0.2;
  double height = 0.5;
  std::uint8_t albedo = 30;

  friend bool operator==(const Cone&, const Cone&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Arena {
  double xmin = -10.0;
  double ymin = -10.0;
  double xmax = 10.0;
  double ymax = 10.0;

  bool contains(double x, double y) const { return x >= xmin && x <= xmax && y >= ymin && y <= ymax; }

  friend bool operator==(const Arena&, const Arena&) = default;
};

struct WorldScene {
  std::vector<Cone> cones;
  std::vector<Point2> targets;
  VehicleState vehicle;
  Arena arena;
  std::uint8_t ground_albedo = 200;
  CameraModel camera;
  VehicleConfig vehicle_config;
};

/// Throws std::invalid_argument on non-positive cone dimensions or an
/// inverted arena.
void validate(const WorldScene& scene);

/// JSON scene document; see docs/scene_format.md. Throws
/// std::invalid_argument on schema violations and std::runtime_error on
/// I/O failure.
WorldScene scene_from_json(const std::string& text);
std::string scene_to_json(const WorldScene& scene);
WorldScene load_scene(const std::filesystem::path& path);
void save_scene(const WorldScene& scene, const std::filesystem::path& path);

/// True iff the vehicle footprint overlaps any cone base.
bool check_collision(const WorldScene& scene);

/// Smallest gap between the vehicle footprint and a cone base (negative on
/// overlap); +inf for an empty scene.
double clearance(const WorldScene& scene);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

Pose get_pose(const WorldScene& scene);
/// Stores the clamped steer angle.
void set_steer(WorldScene& scene, double radians);
void set_speed(WorldScene& scene, double meters_per_second);

/// Advances the vehicle by one step under its stored steer and speed.
void step(WorldScene& scene, double dt);

}  // namespace ppanav::world
