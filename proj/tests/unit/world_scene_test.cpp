#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "ppanav/world/scene.hpp"

namespace {

using namespace ppanav::world;

TEST(SceneJson, RoundTrip) {
  WorldScene s;
  s.cones.push_back({1.5, -2.25, 0.2, 0.5, 40});
  s.cones.push_back({3.0, 1.0, 0.1, 0.3});
  s.targets.push_back({5.0, 0.0});
  s.vehicle.x = 0.5;
  s.vehicle.heading = 1.25;
  s.arena = {-3, -4, 8, 9};
  s.ground_albedo = 190;
  const WorldScene r = scene_from_json(scene_to_json(s));
  EXPECT_EQ(r.cones, s.cones);
  EXPECT_EQ(r.targets, s.targets);
  EXPECT_EQ(r.vehicle, s.vehicle);
  EXPECT_EQ(r.arena, s.arena);
  EXPECT_EQ(r.ground_albedo, 190);
  EXPECT_EQ(scene_to_json(r), scene_to_json(s));
}

TEST(SceneJson, MinimalDocumentUsesDefaults) {
  const WorldScene s = scene_from_json(R"({"cones": [], "targets": [[1, 2]]})");
  EXPECT_TRUE(s.cones.empty());
  EXPECT_EQ(s.targets.size(), 1u);
  EXPECT_EQ(s.ground_albedo, 200);
  EXPECT_EQ(s.vehicle.x, 0.0);
}

TEST(SceneJson, SchemaErrors) {
  EXPECT_THROW(scene_from_json("{not json"), std::invalid_argument);
  EXPECT_THROW(scene_from_json(R"({"cones": [{"cy": 1, "radius": 0.2, "height": 0.5}]})"),
               std::invalid_argument);
  EXPECT_THROW(scene_from_json(R"({"cones": [{"cx": 0, "cy": 1, "radius": -0.2, "height": 0.5}]})"),
               std::invalid_argument);
  EXPECT_THROW(scene_from_json(R"({"cones": [{"cx": 0, "cy": 1, "radius": 0.2, "height": 0}]})"),
               std::invalid_argument);
  EXPECT_THROW(
      scene_from_json(R"({"cones": [{"cx": 0, "cy": 1, "radius": 0.2, "height": 1, "albedo": 300}]})"),
      std::invalid_argument);
  EXPECT_THROW(scene_from_json(R"({"arena": [5, 0, 1, 10]})"), std::invalid_argument);
  EXPECT_THROW(scene_from_json(R"({"targets": [[1]]})"), std::invalid_argument);
}

TEST(SceneFile, SaveLoadAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "ppanav_scene_test.json";
  WorldScene s;
  s.targets.push_back({2, 3});
  save_scene(s, path);
  EXPECT_EQ(load_scene(path).targets, s.targets);
  std::filesystem::remove(path);
  EXPECT_THROW(load_scene(path), std::runtime_error);
}

TEST(Collision, FarAndAtCentre) {
  WorldScene s;
  s.cones.push_back({10.0, 0.0, 0.2, 0.5});
  EXPECT_FALSE(check_collision(s));
  s.vehicle.x = 10.0;
  EXPECT_TRUE(check_collision(s));
  EXPECT_NEAR(clearance(s), -0.5, 1e-12);
}

TEST(Collision, EmptySceneClearanceIsInfinite) {
  EXPECT_EQ(clearance(WorldScene{}), std::numeric_limits<double>::infinity());
  EXPECT_FALSE(check_collision(WorldScene{}));
}

TEST(Collision, SweepMatchesAnalyticDistance) {
  WorldScene s;
  s.cones.push_back({0.0, 0.35, 0.2, 0.5});
  for (int i = -200; i <= 200; ++i) {
    s.vehicle.x = i * 0.01;
    const double d = std::hypot(s.vehicle.x, 0.35);
    EXPECT_EQ(check_collision(s), d < 0.5) << s.vehicle.x;
    EXPECT_NEAR(clearance(s), d - 0.5, 1e-12);
  }
}

TEST(SceneStep, SetSteerClampsAndStepAdvances) {
  WorldScene s;
  set_steer(s, 2.0);
  EXPECT_NEAR(s.vehicle.steer, s.vehicle_config.steer_limit, 1e-12);
  set_steer(s, 0.0);
  set_speed(s, 2.0);
  step(s, 0.5);
  EXPECT_EQ(get_pose(s), (Pose{1.0, 0.0, 0.0}));
}

TEST(Camera, RejectsBadFov) {
  CameraModel c;
  c.fov_deg = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.fov_deg = 180;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.fov_deg = 60;
  EXPECT_NEAR(c.focal_pixels(), 221.7, 0.05);
}

}  // namespace
