#pragma once

// The interface loop talks to the world and to the vision server through
// these two seams. Local implementations call straight into the library;
// remote ones speak the binary protocol over a Channel.

#include <chrono>
#include <deque>
#include <optional>
#include <string_view>

#include "ppanav/bridge/socket.hpp"
#include "ppanav/ppa/plane.hpp"
#include "ppanav/vision/detect.hpp"
#include "ppanav/world/scene.hpp"

namespace ppanav::bridge {

/// Vision-side parameter keys accepted in PARAM_SET.
bool is_vision_param(std::string_view key);

/// Applies a vision parameter; returns false for an unknown key. Throws
/// std::invalid_argument when the value would break the area bands.
bool apply_vision_param(vision::DetectorConfig& config, std::string_view key, float value);

class VisionLink {
 public:
  virtual ~VisionLink() = default;
  /// Hands a frame to the vision side.
  virtual void submit(const ppa::GrayPlane& frame) = 0;
  /// Report for the oldest submitted frame; nullopt once the peer is gone.
  virtual std::optional<vision::ObstacleReport> collect() = 0;
  virtual void set_param(std::string_view key, float value) = 0;
};

class WorldLink {
 public:
  virtual ~WorldLink() = default;
  virtual world::Pose get_pose() = 0;
  virtual ppa::GrayPlane get_frame() = 0;
  virtual void set_steer(float radians) = 0;
  virtual void set_speed(float meters_per_second) = 0;
  virtual void step() = 0;
};

class LocalVision final : public VisionLink {
 public:
  explicit LocalVision(vision::DetectorConfig config) : config_(config) {}

  void submit(const ppa::GrayPlane& frame) override;
  std::optional<vision::ObstacleReport> collect() override;
  void set_param(std::string_view key, float value) override;

  const vision::DetectorConfig& config() const { return config_; }

 private:
  vision::DetectorConfig config_;
  std::deque<vision::ObstacleReport> pending_;
};

class LocalWorld final : public WorldLink {
 public:
  LocalWorld(world::WorldScene scene, double dt) : scene_(std::move(scene)), dt_(dt) {}

  world::Pose get_pose() override { return world::get_pose(scene_); }
  ppa::GrayPlane get_frame() override;
  void set_steer(float radians) override { world::set_steer(scene_, radians); }
  void set_speed(float mps) override { world::set_speed(scene_, mps); }
  void step() override { world::step(scene_, dt_); }

  const world::WorldScene& scene() const { return scene_; }

 private:
  world::WorldScene scene_;
  double dt_;
};

class RemoteVision final : public VisionLink {
 public:
  RemoteVision(Channel& channel, std::chrono::milliseconds timeout)
      : channel_(channel), timeout_(timeout) {}

  void submit(const ppa::GrayPlane& frame) override;
  std::optional<vision::ObstacleReport> collect() override;
  void set_param(std::string_view key, float value) override;

  /// Sequence number carried by the last STATUS echo, if the server sends them.
  std::optional<std::uint32_t> last_sequence() const { return last_sequence_; }

 private:
  Channel& channel_;
  std::chrono::milliseconds timeout_;
  std::optional<std::uint32_t> last_sequence_;
};

class RemoteWorld final : public WorldLink {
 public:
  RemoteWorld(Channel& channel, std::chrono::milliseconds timeout)
      : channel_(channel), timeout_(timeout) {}

  world::Pose get_pose() override;
  ppa::GrayPlane get_frame() override;
  void set_steer(float radians) override { channel_.send(SetSteerMsg{radians}); }
  void set_speed(float mps) override { channel_.send(SetSpeedMsg{mps}); }
  void step() override { channel_.send(StepMsg{}); }

 private:
  Message expect(MsgType type);

  Channel& channel_;
  std::chrono::milliseconds timeout_;
};

/// Raised when a peer closes mid-request or answers with the wrong type.
class PeerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Float32 wire precision, applied identically on every transport so the
/// in-process and networked loops see the same numbers.
vision::ObstacleReport to_wire_precision(const vision::ObstacleReport& r);
world::Pose to_wire_precision(const world::Pose& p);
ReportMsg to_message(const vision::ObstacleReport& r);
vision::ObstacleReport from_message(const ReportMsg& m);

}  // namespace ppanav::bridge
