#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ppanav/runner/run.hpp"
#include "ppanav/runner/scene_gen.hpp"

namespace {

using namespace ppanav;
using namespace ppanav::runner;
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("ppanav_runner_" + name);
  fs::remove_all(d);
  return d;
}

RunConfig local_config(RunMode mode, std::uint64_t steps) {
  RunConfig c;
  c.mode = mode;
  c.max_steps = steps;
  c.ports = {0, 0, 0};
  return c;
}

TEST(RunConfig, ModesAndValidation) {
  EXPECT_EQ(parse_mode("reactive"), RunMode::kReactive);
  EXPECT_EQ(parse_mode("multi-target"), RunMode::kMultiTarget);
  EXPECT_THROW(parse_mode("wander"), std::invalid_argument);
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_steps = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.max_steps = 1;
  c.dt = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RunConfig, Overrides) {
  RunConfig c;
  apply_override(c, "k_steer=30");
  EXPECT_EQ(c.params.k_steer, 30);
  apply_override(c, "threshold=90");
  EXPECT_EQ(c.vision.threshold, 90);
  apply_override(c, "speed_unit=rad");
  EXPECT_EQ(c.speed_unit, world::SpeedUnit::kRadiansPerSecond);
  apply_override(c, "dt=0.1");
  EXPECT_EQ(c.dt, 0.1);
  apply_override(c, "polarity=0");
  EXPECT_EQ(c.vision.polarity, ppa::Polarity::kAbove);
  EXPECT_THROW(apply_override(c, "k_steer"), std::invalid_argument);
  EXPECT_THROW(apply_override(c, "warp=9"), std::invalid_argument);
  EXPECT_THROW(apply_override(c, "k_safe=abc"), std::invalid_argument);
  EXPECT_THROW(apply_override(c, "k_safe=-3"), std::invalid_argument);
  EXPECT_THROW(apply_override(c, "speed_unit=mph"), std::invalid_argument);
}

TEST(Trajectory, CsvRoundTrip) {
  std::vector<bridge::TickRecord> ticks(3);
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    auto& t = ticks[i];
    t.step = i;
    t.pose = {0.5f * i, -1.25f, 0.125f};
    t.mode = i == 2 ? nav::Mode::kIdle : nav::Mode::kAvoidance;
    t.theta_steer = -0.25f;
    t.report = {120, 64, 150.25f, -1};
    t.collision = i == 1;
    t.clearance = 0.75;
    t.target_index = i / 2;
  }
  const std::string csv = to_csv(ticks);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  const auto back = parse_csv(csv);
  ASSERT_EQ(back.size(), ticks.size());
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    EXPECT_EQ(back[i].pose, ticks[i].pose);
    EXPECT_EQ(back[i].mode, ticks[i].mode);
    EXPECT_EQ(back[i].report, ticks[i].report);
    EXPECT_EQ(back[i].collision, ticks[i].collision);
    EXPECT_EQ(back[i].target_index, ticks[i].target_index);
  }
  EXPECT_EQ(to_csv(back), csv);
}

TEST(Trajectory, ParseRejectsMalformed) {
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
  EXPECT_THROW(parse_csv("step,x\n1,2\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n1,2,3\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n0,0,0,0,flying,0,0,0,0,0,0,0,0\n"),
               std::invalid_argument);
}

TEST(Trajectory, SummaryFromLog) {
  std::vector<bridge::TickRecord> ticks(6);
  const bool flags[] = {false, true, true, false, true, false};
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    ticks[i].step = i;
    ticks[i].collision = flags[i];
    ticks[i].clearance = 1.0 - 0.3 * i;
    ticks[i].target_index = i >= 3 ? 1 : 0;
    ticks[i].mode = nav::Mode::kTargetNav;
  }
  const RunSummary s = summarize(ticks, 2, bridge::StopReason::kMaxSteps);
  EXPECT_EQ(s.steps, 6u);
  EXPECT_EQ(s.collision_ticks, 3u);
  EXPECT_EQ(s.collision_events, 2u);
  EXPECT_EQ(s.reached_targets, 1u);
  EXPECT_NEAR(s.min_clearance, -0.5, 1e-12);
  EXPECT_EQ(s.stop_reason, "max_steps");

  const auto js = nlohmann::json::parse(summary_json(summarize({}, 0, bridge::StopReason::kIdle)));
  EXPECT_TRUE(js["min_clearance"].is_null());
  EXPECT_EQ(js["steps"], 0);
}

TEST(SceneGen, DeterministicInSeed) {
  for (auto kind : {SceneKind::kEllipses, SceneKind::kCorridor, SceneKind::kScatter}) {
    EXPECT_EQ(world::scene_to_json(gen_scene(kind, 5)), world::scene_to_json(gen_scene(kind, 5)));
    EXPECT_NE(world::scene_to_json(gen_scene(kind, 5)), world::scene_to_json(gen_scene(kind, 6)));
  }
  EXPECT_THROW(parse_scene_kind("maze"), std::invalid_argument);
}

TEST(SceneGen, EllipseConesLieOnTheirRings) {
  const EllipseLayout layout;
  const auto scene = make_ellipses(11, layout);
  const double lo = std::pow(1 - layout.jitter, 2), hi = std::pow(1 + layout.jitter, 2);
  int outer = 0, inner = 0;
  for (const auto& c : scene.cones) {
    const double eo = std::pow(c.cx / layout.outer_a, 2) + std::pow(c.cy / layout.outer_b, 2);
    const double ei = std::pow(c.cx / layout.inner_a, 2) + std::pow(c.cy / layout.inner_b, 2);
    const bool on_outer = eo >= lo - 1e-12 && eo <= hi + 1e-12;
    const bool on_inner = ei >= lo - 1e-12 && ei <= hi + 1e-12;
    EXPECT_TRUE(on_outer || on_inner) << c.cx << "," << c.cy;
    outer += on_outer;
    inner += on_inner;
  }
  EXPECT_GT(outer, inner);
  EXPECT_GT(inner, 10);
  EXPECT_FALSE(world::check_collision(scene));
}

TEST(SceneGen, ScatterCountAndKeepOut) {
  ScatterLayout layout;
  layout.cone_count = 9;
  const auto scene = make_scatter(3, layout);
  EXPECT_EQ(scene.cones.size(), 9u);
  EXPECT_EQ(scene.targets.size(), 3u);
  for (const auto& c : scene.cones) EXPECT_GE(std::hypot(c.cx, c.cy), layout.keep_out);
  layout.cone_count = 5000;
  EXPECT_THROW(make_scatter(3, layout), std::invalid_argument);
}

TEST(Run, EmptySceneTargetThreeMetresAhead) {
  world::WorldScene scene;
  scene.targets = {{3.0, 0.0}};
  const auto r = run_scene(scene, local_config(RunMode::kSingleTarget, 2000));
  EXPECT_EQ(r.summary.reached_targets, 1u);
  EXPECT_EQ(r.summary.collision_ticks, 0u);
  EXPECT_EQ(r.stop, bridge::StopReason::kIdle);
  EXPECT_EQ(r.summary.final_mode, "idle");
}

TEST(Run, RejectsBadConfigBeforeStarting) {
  world::WorldScene scene;
  EXPECT_THROW(run_scene(scene, local_config(RunMode::kSingleTarget, 10)), std::invalid_argument);
  scene.targets = {{1, 1}};
  EXPECT_THROW(run_scene(scene, local_config(RunMode::kSingleTarget, 0)), std::invalid_argument);
  EXPECT_THROW(run_scene(scene, local_config(RunMode::kMultiTarget, 10)), std::invalid_argument);
  RunConfig missing = local_config(RunMode::kSingleTarget, 10);
  missing.scene_path = "/nonexistent/scene.json";
  EXPECT_THROW(run(missing), std::runtime_error);
}

TEST(Run, FailOnCollisionStopsAtFirstContact) {
  world::WorldScene scene;
  scene.cones.push_back({0.3, 0.0, 0.2, 0.5});  // overlapping at start
  scene.targets = {{5, 0}};
  RunConfig c = local_config(RunMode::kSingleTarget, 100);
  c.fail_on_collision = true;
  const auto r = run_scene(scene, c);
  EXPECT_EQ(r.stop, bridge::StopReason::kCollision);
  EXPECT_EQ(r.log.size(), 1u);
}

TEST(Run, WritesOutputsAndIsReproducible) {
  const auto scene = make_corridor(2);
  RunConfig c = local_config(RunMode::kSingleTarget, 120);
  const auto a = scratch_dir("a"), b = scratch_dir("b");
  c.out_dir = a;
  run_scene(scene, c);
  c.out_dir = b;
  run_scene(scene, c);
  EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
  auto summary = nlohmann::json::parse(slurp(a / "summary.json"));
  EXPECT_EQ(summary["steps"], 120);
  const auto log = parse_csv(slurp(a / "trajectory.csv"));
  auto again = nlohmann::json::parse(summary_json(summarize(log, 1, bridge::StopReason::kMaxSteps)));
  // the CSV carries clearance to 9 significant digits
  EXPECT_NEAR(again["min_clearance"].get<double>(), summary["min_clearance"].get<double>(), 1e-8);
  again.erase("min_clearance");
  summary.erase("min_clearance");
  EXPECT_EQ(again, summary);
}

TEST(Run, NetworkedMatchesInProcess) {
  const auto scene = make_corridor(4);
  RunConfig c = local_config(RunMode::kSingleTarget, 200);
  const auto local = run_scene(scene, c);
  c.net = true;
  const auto net = run_scene(scene, c);
  EXPECT_EQ(to_csv(local.log), to_csv(net.log));
}

TEST(Run, ConsoleDoesNotChangeTheLog) {
  const auto scene = make_corridor(5);
  RunConfig c = local_config(RunMode::kSingleTarget, 150);
  const auto plain = run_scene(scene, c);
  c.console_port = 0;
  const auto with_console = run_scene(scene, c);
  EXPECT_EQ(to_csv(plain.log), to_csv(with_console.log));
}

}  // namespace
