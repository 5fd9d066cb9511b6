#include "ppanav/world/scene.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ppanav::world {

using nlohmann::json;

namespace {

std::uint8_t intensity(int v, const char* what) {
  if (v < 0 || v > 255) throw std::invalid_argument(std::string(what) + " must be in [0,255]");
  return static_cast<std::uint8_t>(v);
}

}  // namespace

void validate(const WorldScene& scene) {
  for (const auto& c : scene.cones) {
    if (!(c.base_radius > 0.0) || !(c.height > 0.0)) {
      throw std::invalid_argument("cone radius and height must be positive");
    }
  }
  const auto& a = scene.arena;
  if (!(a.xmin < a.xmax) || !(a.ymin < a.ymax)) {
    throw std::invalid_argument("arena must satisfy xmin < xmax and ymin < ymax");
  }
  scene.camera.validate();
}

WorldScene scene_from_json(const std::string& text) {
  WorldScene scene;
  try {
    const json doc = json::parse(text);
    for (const auto& c : doc.value("cones", json::array())) {
      Cone cone;
      cone.cx = c.at("cx").get<double>();
      cone.cy = c.at("cy").get<double>();
      cone.base_radius = c.at("radius").get<double>();
      cone.height = c.at("height").get<double>();
      cone.albedo = intensity(c.value("albedo", int{cone.albedo}), "cone albedo");
      scene.cones.push_back(cone);
    }
    for (const auto& t : doc.value("targets", json::array())) {
      scene.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    }
    if (doc.contains("vehicle")) {
      const auto& v = doc.at("vehicle");
      scene.vehicle.x = v.value("x", 0.0);
      scene.vehicle.y = v.value("y", 0.0);
      scene.vehicle.heading = wrap_angle(v.value("heading", 0.0));
    }
    if (doc.contains("arena")) {
      const auto& a = doc.at("arena");
      scene.arena = {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>(),
                     a.at(3).get<double>()};
    }
    scene.ground_albedo = intensity(doc.value("ground_albedo", int{scene.ground_albedo}), "ground_albedo");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scene: ") + e.what());
  }
  validate(scene);
  return scene;
}

std::string scene_to_json(const WorldScene& scene) {
  json doc;
  doc["cones"] = json::array();
  for (const auto& c : scene.cones) {
    doc["cones"].push_back(
        {{"cx", c.cx}, {"cy", c.cy}, {"radius", c.base_radius}, {"height", c.height}, {"albedo", c.albedo}});
  }
  doc["targets"] = json::array();
  for (const auto& t : scene.targets) doc["targets"].push_back({t.x, t.y});
  doc["vehicle"] = {{"x", scene.vehicle.x}, {"y", scene.vehicle.y}, {"heading", scene.vehicle.heading}};
  doc["arena"] = {scene.arena.xmin, scene.arena.ymin, scene.arena.xmax, scene.arena.ymax};
  doc["ground_albedo"] = scene.ground_albedo;
  return doc.dump(2) + "\n";
}

WorldScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scene file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scene_from_json(buf.str());
}

void save_scene(const WorldScene& scene, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scene file " + path.string());
  out << scene_to_json(scene);
}

double clearance(const WorldScene& scene) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : scene.cones) {
    const double d = std::hypot(scene.vehicle.x - c.cx, scene.vehicle.y - c.cy);
    best = std::min(best, d - c.base_radius - scene.vehicle_config.vehicle_radius);
  }
  return best;
}

bool check_collision(const WorldScene& scene) {
  for (const auto& c : scene.cones) {
    const double d = std::hypot(scene.vehicle.x - c.cx, scene.vehicle.y - c.cy);
    if (d < c.base_radius + scene.vehicle_config.vehicle_radius) return true;
  }
  return false;
}

Pose get_pose(const WorldScene& scene) {
  return {scene.vehicle.x, scene.vehicle.y, scene.vehicle.heading};
}

void set_steer(WorldScene& scene, double radians) {
  scene.vehicle.steer = clamp_steer(radians, scene.vehicle_config);
}

void set_speed(WorldScene& scene, double meters_per_second) {
  scene.vehicle.speed = meters_per_second;
}

void step(WorldScene& scene, double dt) {
  scene.vehicle = step_vehicle(scene.vehicle, scene.vehicle.steer, dt, scene.vehicle_config);
}

}  // namespace ppanav::world
