#pragma once

#include <vector>

#include "ppanav/bridge/loop.hpp"
#include "ppanav/runner/config.hpp"
#include "ppanav/runner/trajectory.hpp"
#include "ppanav/world/scene.hpp"

namespace ppanav::runner {

struct RunResult {
  std::vector<bridge::TickRecord> log;
  RunSummary summary;
  bridge::StopReason stop = bridge::StopReason::kMaxSteps;
};

/// Runs a scene already in memory. Honors every RunConfig field except
/// scene_path. Writes trajectory.csv and summary.json when out_dir is set.
RunResult run_scene(const world::WorldScene& scene, const RunConfig& config);

/// Validates the config, loads the scene and runs it. Throws
/// std::invalid_argument for bad configurations (before anything starts)
/// and std::runtime_error for unreadable scenes.
RunResult run(const RunConfig& config);

/// Target list the loop uses for `mode`; throws std::invalid_argument when
/// the scene has too few targets.
std::vector<world::Point2> targets_for(RunMode mode, const world::WorldScene& scene);

}  // namespace ppanav::runner
