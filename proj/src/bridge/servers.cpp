#include "ppanav/bridge/servers.hpp"

#include <charconv>
#include <cstdlib>
#include <iostream>

#include "ppanav/bridge/links.hpp"
#include "ppanav/world/render.hpp"

namespace ppanav::bridge {
namespace {

std::uint16_t parse_port(std::string_view s) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value > 65535) {
    throw std::invalid_argument("bad port number: " + std::string(s));
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace

PortSet parse_ports(const std::string& text) {
  PortSet ports;
  std::uint16_t* slots[] = {&ports.vision, &ports.world, &ports.console};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) == (comma == std::string::npos)) {
      throw std::invalid_argument("PPANAV_PORTS must be vision,world,console");
    }
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    *slots[i] = parse_port(std::string_view(text).substr(start, end - start));
    start = end + 1;
  }
  return ports;
}

PortSet ports_from_environment() {
  const char* env = std::getenv("PPANAV_PORTS");
  if (env == nullptr || *env == '\0') return {};
  return parse_ports(env);
}

SessionStats serve_vision(TcpListener& listener, vision::DetectorConfig config,
                          const VisionServerOptions& options) {
  Channel channel(listener.accept(options.accept_timeout));
  SessionStats stats;
  while (auto m = channel.receive(options.idle_timeout)) {
    ++stats.messages;
    if (auto* frame = std::get_if<FrameMsg>(&*m)) {
      ++stats.frames;
      const auto report = vision::detect_closest(frame->frame, config);
      if (options.echo_sequence) {
        channel.send(StatusMsg{0, static_cast<float>(stats.frames)});
      }
      channel.send(to_message(report));
    } else if (auto* param = std::get_if<ParamSetMsg>(&*m)) {
      try {
        if (!apply_vision_param(config, param->key, param->value)) {
          std::cerr << "vision server: ignoring unknown parameter '" << param->key << "'\n";
        }
      } catch (const std::invalid_argument& e) {
        std::cerr << "vision server: rejected " << param->key << ": " << e.what() << "\n";
      }
    } else {
      throw ProtocolError(ProtocolError::Kind::kUnknownType, 3,
                          "vision server cannot handle this message type");
    }
  }
  return stats;
}

SessionStats serve_world(TcpListener& listener, world::WorldScene scene,
                         const WorldServerOptions& options) {
  Channel channel(listener.accept(options.accept_timeout));
  SessionStats stats;
  while (auto m = channel.receive(options.idle_timeout)) {
    ++stats.messages;
    std::visit(
        [&](const auto& msg) {
          using T = std::decay_t<decltype(msg)>;
          if constexpr (std::is_same_v<T, GetPoseMsg>) {
            const auto p = to_wire_precision(world::get_pose(scene));
            channel.send(PoseMsg{static_cast<float>(p.x), static_cast<float>(p.y),
                                 static_cast<float>(p.heading)});
          } else if constexpr (std::is_same_v<T, GetFrameMsg>) {
            ++stats.frames;
            channel.send(FrameMsg{world::render_frame(scene)});
          } else if constexpr (std::is_same_v<T, SetSteerMsg>) {
            world::set_steer(scene, msg.radians);
          } else if constexpr (std::is_same_v<T, SetSpeedMsg>) {
            world::set_speed(scene, msg.meters_per_second);
          } else if constexpr (std::is_same_v<T, StepMsg>) {
            world::step(scene, options.dt);
          } else {
            throw ProtocolError(ProtocolError::Kind::kUnknownType, 3,
                                "world server cannot handle this message type");
          }
        },
        *m);
  }
  return stats;
}

}  // namespace ppanav::bridge
