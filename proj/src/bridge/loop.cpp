#include "ppanav/bridge/loop.hpp"

#include <cmath>
#include <iostream>
#include <utility>

namespace ppanav::bridge {

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::kIdle: return "idle";
    case StopReason::kMaxSteps: return "max_steps";
    case StopReason::kCollision: return "collision";
    case StopReason::kDisconnect: return "disconnect";
  }
  return "unknown";
}

namespace {

double* nav_field(nav::NavParams& p, std::string_view key) {
  if (key == "d_safe") return &p.d_safe;
  if (key == "e_safe") return &p.e_safe;
  if (key == "k_safe") return &p.k_safe;
  if (key == "k_steer") return &p.k_steer;
  if (key == "d_vel") return &p.d_vel;
  if (key == "d_steer") return &p.d_steer;
  return nullptr;
}

}  // namespace

bool is_nav_param(std::string_view key) {
  nav::NavParams scratch;
  return nav_field(scratch, key) != nullptr;
}

bool apply_nav_param(nav::NavParams& params, std::string_view key, double value) {
  nav::NavParams next = params;
  double* field = nav_field(next, key);
  if (field == nullptr) return false;
  if (!std::isfinite(value)) throw std::invalid_argument("parameter value must be finite");
  *field = value;
  next.validate();
  if (next.d_vel < 0.0) throw std::invalid_argument("d_vel must not be negative");
  params = next;
  return true;
}

bool ParamQueue::push(const std::string& key, double value) {
  if (!is_nav_param(key) && !is_vision_param(key)) return false;
  std::lock_guard lock(mutex_);
  pending_.emplace_back(key, value);
  return true;
}

std::vector<std::pair<std::string, double>> ParamQueue::drain() {
  std::lock_guard lock(mutex_);
  return std::exchange(pending_, {});
}

LoopResult run_interface(WorldLink& world, VisionLink& vision, LoopConfig config,
                         const LoopHooks& hooks) {
  LoopResult result;
  std::size_t target_index = 0;
  bool awaiting_report = false;

  for (std::uint64_t step = 0; step < config.max_steps; ++step) {
    if (hooks.params != nullptr) {
      for (const auto& [key, value] : hooks.params->drain()) {
        try {
          if (apply_nav_param(config.nav, key, value)) continue;
          vision::DetectorConfig mirror = config.vision;
          if (apply_vision_param(mirror, key, static_cast<float>(value))) {
            vision.set_param(key, static_cast<float>(value));
            config.vision = mirror;
          }
        } catch (const std::invalid_argument& e) {
          std::cerr << "interface: rejected " << key << "=" << value << ": " << e.what() << "\n";
        }
      }
    }

    std::optional<vision::ObstacleReport> report;
    world::Pose pose;
    ppa::GrayPlane frame;
    try {
      pose = to_wire_precision(world.get_pose());
      frame = world.get_frame();
      vision.submit(frame);
      if (!config.freerun) {
        report = vision.collect();
      } else if (awaiting_report) {
        report = vision.collect();
      } else {
        report = vision::ObstacleReport{};
        awaiting_report = true;
      }
    } catch (const PeerError& e) {
      std::cerr << "interface: " << e.what() << "\n";
      report.reset();
    } catch (const SocketError& e) {
      std::cerr << "interface: " << e.what() << "\n";
      report.reset();
    }
    if (!report) {
      result.stop = StopReason::kDisconnect;
      return result;
    }
    const auto wire_report = to_wire_precision(*report);

    const auto decision = nav::navigate_step(wire_report, pose, config.targets, target_index,
                                             config.nav, config.reactive);
    TickRecord rec;
    rec.step = step;
    rec.pose = pose;
    rec.mode = decision.command.mode;
    rec.theta_steer = static_cast<float>(decision.command.theta_steer);
    rec.report = wire_report;
    if (hooks.probe) {
      const auto probe = hooks.probe(pose);
      rec.collision = probe.collision;
      rec.clearance = probe.clearance;
    }
    rec.target_index = decision.target_index;
    rec.target_distance = decision.target_distance;
    target_index = decision.target_index;
    result.ticks.push_back(rec);
    if (hooks.on_tick) hooks.on_tick(TickContext{result.ticks.back(), frame, config.nav, config.vision});

    if (rec.mode == nav::Mode::kIdle) {
      try {
        world.set_speed(0.0f);
      } catch (const std::exception& e) {
        std::cerr << "interface: " << e.what() << "\n";
      }
      result.stop = StopReason::kIdle;
      return result;
    }
    if (rec.collision && config.stop_on_collision) {
      result.stop = StopReason::kCollision;
      return result;
    }
    const double speed =
        decision.drive ? world::ground_speed(config.nav.d_vel, config.speed_unit, config.vehicle) : 0.0;
    try {
      world.set_steer(static_cast<float>(decision.command.theta_steer));
      world.set_speed(static_cast<float>(speed));
      world.step();
    } catch (const std::exception& e) {
      std::cerr << "interface: " << e.what() << "\n";
      result.stop = StopReason::kDisconnect;
      return result;
    }
  }
  result.stop = StopReason::kMaxSteps;
  return result;
}

}  // namespace ppanav::bridge
