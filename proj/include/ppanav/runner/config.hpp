#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppanav/bridge/servers.hpp"
#include "ppanav/nav/navigator.hpp"
#include "ppanav/vision/detect.hpp"
#include "ppanav/world/vehicle.hpp"

namespace ppanav::runner {

enum class RunMode { kReactive, kSingleTarget, kMultiTarget };

std::string_view to_string(RunMode m);
/// Accepts reactive, single_target, multi_target (dashes allowed).
RunMode parse_mode(std::string_view text);

struct RunConfig {
  std::filesystem::path scene_path;
  RunMode mode = RunMode::kSingleTarget;
  nav::NavParams params;
  vision::DetectorConfig vision;
  std::uint64_t max_steps = 2000;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out_dir;
  double dt = 0.05;
  world::SpeedUnit speed_unit = world::SpeedUnit::kRevolutionsPerSecond;

  bool net = false;
  bridge::PortSet ports;  // 0 picks an ephemeral port
  bool freerun = false;
  bool fail_on_collision = false;
  std::optional<std::uint16_t> console_port;
  std::optional<std::filesystem::path> console_assets;

  /// Throws std::invalid_argument; does not look at the scene file.
  void validate() const;
};

/// Applies one `key=value` override (navigation, vision or run keys such
/// as dt and speed_unit). Throws std::invalid_argument on unknown keys or
/// unparsable values.
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace ppanav::runner
