#pragma once

#include <chrono>
#include <cstdint>

#include "ppanav/bridge/socket.hpp"
#include "ppanav/vision/detect.hpp"
#include "ppanav/world/scene.hpp"

namespace ppanav::bridge {

inline constexpr std::uint16_t kDefaultVisionPort = 27725;
inline constexpr std::uint16_t kDefaultWorldPort = 27726;
inline constexpr std::uint16_t kDefaultConsolePort = 27727;

struct PortSet {
  std::uint16_t vision = kDefaultVisionPort;
  std::uint16_t world = kDefaultWorldPort;
  std::uint16_t console = kDefaultConsolePort;
};

/// Defaults, overridden by PPANAV_PORTS="vision,world,console" when set.
/// Throws std::invalid_argument on a malformed variable.
PortSet ports_from_environment();
PortSet parse_ports(const std::string& text);

struct VisionServerOptions {
  /// Precede every REPORT with a STATUS whose e_dis carries the 1-based
  /// frame counter. Used to check lock-step ordering.
  bool echo_sequence = false;
  std::chrono::milliseconds accept_timeout{10000};
  std::chrono::milliseconds idle_timeout{30000};
};

struct SessionStats {
  std::uint64_t messages = 0;
  std::uint64_t frames = 0;
};

/// Accepts one client and serves it until it disconnects: FRAME -> REPORT,
/// PARAM_SET applied before the next FRAME.
SessionStats serve_vision(TcpListener& listener, vision::DetectorConfig config,
                          const VisionServerOptions& options = {});

struct WorldServerOptions {
  double dt = 0.05;
  std::chrono::milliseconds accept_timeout{10000};
  std::chrono::milliseconds idle_timeout{30000};
};

/// Accepts one client and serves the world: GET_POSE -> POSE,
/// GET_FRAME -> FRAME, SET_STEER / SET_SPEED / STEP mutate without reply.
SessionStats serve_world(TcpListener& listener, world::WorldScene scene,
                         const WorldServerOptions& options = {});

}  // namespace ppanav::bridge
