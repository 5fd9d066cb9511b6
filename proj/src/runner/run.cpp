#include "ppanav/runner/run.hpp"

#include <fstream>
#include <future>
#include <memory>
#include <stdexcept>

#include "ppanav/bridge/servers.hpp"
#include "ppanav/bridge/telemetry.hpp"

namespace ppanav::runner {
namespace {

constexpr std::chrono::milliseconds kReportTimeout{2000};

void write_outputs(const std::filesystem::path& dir, const RunResult& result) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + (dir / "trajectory.csv").string());
    write_csv(csv, result.log);
  }
  std::ofstream js(dir / "summary.json", std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
  js << summary_json(result.summary);
}

bridge::LoopResult run_networked(const world::WorldScene& scene, const RunConfig& config,
                                 const bridge::LoopConfig& loop, const bridge::LoopHooks& hooks) {
  bridge::TcpListener vision_listener(config.ports.vision);
  bridge::TcpListener world_listener(config.ports.world);

  auto vision_done = std::async(std::launch::async, [&] {
    return bridge::serve_vision(vision_listener, config.vision);
  });
  auto world_done = std::async(std::launch::async, [&] {
    return bridge::serve_world(world_listener, scene, bridge::WorldServerOptions{.dt = config.dt});
  });

  bridge::LoopResult result;
  {
    bridge::Channel vision_channel(bridge::TcpStream::connect("127.0.0.1", vision_listener.port()));
    bridge::Channel world_channel(bridge::TcpStream::connect("127.0.0.1", world_listener.port()));
    bridge::RemoteVision vision(vision_channel, kReportTimeout);
    bridge::RemoteWorld world(world_channel, kReportTimeout);
    result = bridge::run_interface(world, vision, loop, hooks);
    vision_channel.stream().shutdown();
    world_channel.stream().shutdown();
  }
  vision_done.get();
  world_done.get();
  return result;
}

}  // namespace

std::vector<world::Point2> targets_for(RunMode mode, const world::WorldScene& scene) {
  switch (mode) {
    case RunMode::kReactive: return {};
    case RunMode::kSingleTarget:
      if (scene.targets.empty()) throw std::invalid_argument("single_target mode needs at least one target");
      return {scene.targets.front()};
    case RunMode::kMultiTarget:
      if (scene.targets.size() < 2) throw std::invalid_argument("multi_target mode needs at least two targets");
      return scene.targets;
  }
  return {};
}

RunResult run_scene(const world::WorldScene& scene, const RunConfig& config) {
  config.validate();
  world::validate(scene);

  bridge::LoopConfig loop;
  loop.nav = config.params;
  loop.nav.steer_limit = scene.vehicle_config.steer_limit;
  loop.vision = config.vision;
  loop.targets = targets_for(config.mode, scene);
  loop.reactive = config.mode == RunMode::kReactive;
  loop.max_steps = config.max_steps;
  loop.speed_unit = config.speed_unit;
  loop.vehicle = scene.vehicle_config;
  loop.freerun = config.freerun;
  loop.stop_on_collision = config.fail_on_collision;

  bridge::LoopHooks hooks;
  hooks.probe = [&scene](const world::Pose& pose) {
    world::WorldScene probe_scene;
    probe_scene.cones = scene.cones;
    probe_scene.vehicle_config = scene.vehicle_config;
    probe_scene.vehicle.x = pose.x;
    probe_scene.vehicle.y = pose.y;
    return bridge::CollisionProbe{world::check_collision(probe_scene), world::clearance(probe_scene)};
  };

  std::unique_ptr<bridge::TelemetryHub> hub;
  std::unique_ptr<bridge::ConsoleServer> console;
  if (config.console_port) {
    hub = std::make_unique<bridge::TelemetryHub>(loop.nav, loop.vision);
    console = std::make_unique<bridge::ConsoleServer>(*hub, *config.console_port, config.console_assets);
    hooks.on_tick = [h = hub.get()](const bridge::TickContext& tick) { h->publish(tick); };
    hooks.params = &hub->params();
  }

  bridge::LoopResult loop_result;
  if (config.net) {
    loop_result = run_networked(scene, config, loop, hooks);
  } else {
    bridge::LocalWorld world(scene, config.dt);
    bridge::LocalVision vision(config.vision);
    loop_result = bridge::run_interface(world, vision, loop, hooks);
  }
  if (hub) hub->close();
  if (console) console->stop();

  RunResult result;
  result.log = std::move(loop_result.ticks);
  result.stop = loop_result.stop;
  result.summary = summarize(result.log, loop.targets.size(), result.stop);
  if (config.out_dir) write_outputs(*config.out_dir, result);
  return result;
}

RunResult run(const RunConfig& config) {
  config.validate();
  const world::WorldScene scene = world::load_scene(config.scene_path);
  return run_scene(scene, config);
}

}  // namespace ppanav::runner
