#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "ppanav/bridge/links.hpp"
#include "ppanav/nav/navigator.hpp"
#include "ppanav/world/vehicle.hpp"

namespace ppanav::bridge {

/// One control tick as seen by the interface.
struct TickRecord {
  std::uint64_t step = 0;
  world::Pose pose;
  nav::Mode mode = nav::Mode::kIdle;
  double theta_steer = 0.0;
  vision::ObstacleReport report;
  bool collision = false;
  double clearance = 0.0;
  std::size_t target_index = 0;
  double target_distance = 0.0;
};

enum class StopReason { kIdle, kMaxSteps, kCollision, kDisconnect };

std::string_view to_string(StopReason r);

/// Whether `key` names a navigation parameter.
bool is_nav_param(std::string_view key);
/// Returns false for an unknown key; throws std::invalid_argument when the
/// value would leave the parameters invalid.
bool apply_nav_param(nav::NavParams& params, std::string_view key, double value);

/// Parameter updates from the console; drained once at the start of each
/// tick so a tick sees either all old or all new values.
class ParamQueue {
 public:
  /// Returns false (and queues nothing) for an unknown key.
  bool push(const std::string& key, double value);
  std::vector<std::pair<std::string, double>> drain();

 private:
  std::mutex mutex_;
  std::vector<std::pair<std::string, double>> pending_;
};

struct LoopConfig {
  nav::NavParams nav;
  vision::DetectorConfig vision;  // mirror of the vision side's settings
  std::vector<world::Point2> targets;
  bool reactive = false;
  std::uint64_t max_steps = 1000;
  world::SpeedUnit speed_unit = world::SpeedUnit::kRevolutionsPerSecond;
  world::VehicleConfig vehicle;
  bool freerun = false;
  bool stop_on_collision = false;
};

struct CollisionProbe {
  bool collision = false;
  double clearance = 0.0;
};

struct TickContext {
  const TickRecord& record;
  const ppa::GrayPlane& frame;
  const nav::NavParams& nav;
  const vision::DetectorConfig& vision;
};

struct LoopHooks {
  std::function<CollisionProbe(const world::Pose&)> probe;
  std::function<void(const TickContext&)> on_tick;
  ParamQueue* params = nullptr;
};

struct LoopResult {
  std::vector<TickRecord> ticks;
  StopReason stop = StopReason::kMaxSteps;
};

/// The interface's closed loop: pose and frame from the world, frame to
/// vision, report back, navigate, steer and speed to the world, step.
/// In lock-step mode each tick's report comes from that tick's frame;
/// with `freerun` the controller acts on the previous frame's report.
LoopResult run_interface(WorldLink& world, VisionLink& vision, LoopConfig config,
                         const LoopHooks& hooks = {});

}  // namespace ppanav::bridge
