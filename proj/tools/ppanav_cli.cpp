// ppanav: closed-loop runner and scene generator.
//
//   ppanav run --scene F --mode M [--net] [--steps N] [--out DIR]
//              [--param k=v ...] [--console-port P]
//   ppanav gen-scene --kind K --seed S --out F
//   ppanav serve-vision [--port P]
//   ppanav serve-world --scene F [--port P]

#include <CLI11.hpp>

#include <iostream>

#include "ppanav/bridge/servers.hpp"
#include "ppanav/ppa/kernels.hpp"
#include "ppanav/runner/run.hpp"
#include "ppanav/runner/scene_gen.hpp"

namespace {

using namespace ppanav;

int do_run(runner::RunConfig config, const std::string& mode, const std::vector<std::string>& params,
           bool quiet) {
  config.mode = runner::parse_mode(mode);
  for (const auto& p : params) runner::apply_override(config, p);
  const auto result = runner::run(config);
  if (!quiet) std::cout << runner::summary_json(result.summary);
  return result.stop == bridge::StopReason::kCollision ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pixel-processor-array navigation simulator"};
  app.require_subcommand(1);

  const bridge::PortSet env_ports = [] {
    try {
      return bridge::ports_from_environment();
    } catch (const std::exception& e) {
      std::cerr << "ppanav: " << e.what() << "\n";
      std::exit(2);
    }
  }();

  runner::RunConfig config;
  config.ports = env_ports;
  std::string mode = "single_target";
  std::vector<std::string> params;
  std::string out_dir;
  std::uint16_t console_port = 0;
  std::string console_assets;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run the closed loop on a scene");
  run->add_option("--scene", config.scene_path, "Scene JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--mode", mode, "reactive | single_target | multi_target")->required();
  run->add_flag("--net", config.net, "Run vision and world as TCP servers on loopback");
  run->add_option("--steps", config.max_steps, "Maximum loop ticks")->capture_default_str();
  run->add_option("--out", out_dir, "Directory for trajectory.csv and summary.json");
  run->add_option("--param", params, "Parameter override key=value (repeatable)");
  run->add_option("--console-port", console_port, "Serve the operator console on this port");
  run->add_option("--console-assets", console_assets, "Static files for the console")->check(CLI::ExistingDirectory);
  run->add_flag("--freerun", config.freerun, "Act on the previous frame's report instead of lock-step");
  run->add_flag("--fail-on-collision", config.fail_on_collision, "Stop at the first collision, exit 3");
  run->add_option("--seed", config.seed, "Recorded in the run for reproducibility");
  run->add_flag("--quiet", quiet, "Do not print the summary");

  runner::SceneKind kind = runner::SceneKind::kEllipses;
  std::string kind_text;
  std::uint64_t seed = 0;
  std::string scene_out;
  auto* gen = app.add_subcommand("gen-scene", "Generate a scene file");
  gen->add_option("--kind", kind_text, "ellipses | corridor | scatter")->required();
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", scene_out, "Output scene file")->required();

  std::uint16_t port = 0;
  std::string world_scene;
  double dt = 0.05;
  auto* serve_vision = app.add_subcommand("serve-vision", "Serve closest-obstacle detection over TCP");
  serve_vision->add_option("--port", port, "Listen port (default from PPANAV_PORTS or 27725)");
  auto* serve_world = app.add_subcommand("serve-world", "Serve a scene over TCP");
  serve_world->add_option("--scene", world_scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  serve_world->add_option("--port", port, "Listen port (default from PPANAV_PORTS or 27726)");
  serve_world->add_option("--dt", dt, "Timestep in seconds")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (!out_dir.empty()) config.out_dir = out_dir;
      if (console_port != 0) config.console_port = console_port;
      if (!console_assets.empty()) config.console_assets = console_assets;
      const int rc = do_run(config, mode, params, quiet);
      return rc;
    }
    if (*gen) {
      kind = runner::parse_scene_kind(kind_text);
      world::save_scene(runner::gen_scene(kind, seed), scene_out);
      return 0;
    }
    if (*serve_vision) {
      bridge::TcpListener listener(port != 0 ? port : env_ports.vision);
      std::cerr << "vision server on 127.0.0.1:" << listener.port() << " (kernels: "
                << ppa::active_kernels().name << ")\n";
      bridge::VisionServerOptions opts;
      opts.accept_timeout = std::chrono::hours(24);
      const auto stats = bridge::serve_vision(listener, vision::DetectorConfig{}, opts);
      std::cerr << "served " << stats.frames << " frames\n";
      return 0;
    }
    if (*serve_world) {
      bridge::TcpListener listener(port != 0 ? port : env_ports.world);
      std::cerr << "world server on 127.0.0.1:" << listener.port() << "\n";
      bridge::WorldServerOptions opts;
      opts.dt = dt;
      opts.accept_timeout = std::chrono::hours(24);
      bridge::serve_world(listener, world::load_scene(world_scene), opts);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "ppanav: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ppanav: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
