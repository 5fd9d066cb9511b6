#include "ppanav/bridge/links.hpp"

#include <cmath>
#include <limits>

#include "ppanav/world/render.hpp"

namespace ppanav::bridge {
namespace {

int* area_field(vision::AreaConfig& a, std::string_view key) {
  if (key == "distant_x_max") return &a.distant_x_max;
  if (key == "forbidden_x_min") return &a.forbidden_x_min;
  if (key == "safe_right_max") return &a.safe_right_max;
  if (key == "safe_left_min") return &a.safe_left_min;
  if (key == "right_y_min") return &a.right_y_min;
  if (key == "right_y_max") return &a.right_y_max;
  if (key == "left_y_min") return &a.left_y_min;
  if (key == "left_y_max") return &a.left_y_max;
  return nullptr;
}

}  // namespace

bool is_vision_param(std::string_view key) {
  vision::AreaConfig scratch;
  return key == "threshold" || area_field(scratch, key) != nullptr;
}

bool apply_vision_param(vision::DetectorConfig& config, std::string_view key, float value) {
  if (!std::isfinite(value)) throw std::invalid_argument("parameter value must be finite");
  if (key == "threshold") {
    if (value < 0.0f || value > 255.0f) throw std::invalid_argument("threshold must lie in [0,255]");
    config.threshold = static_cast<std::uint8_t>(std::lround(value));
    return true;
  }
  vision::AreaConfig next = config.areas;
  int* field = area_field(next, key);
  if (field == nullptr) return false;
  *field = static_cast<int>(std::lround(value));
  next.validate();
  config.areas = next;
  return true;
}

void LocalVision::submit(const ppa::GrayPlane& frame) {
  pending_.push_back(vision::detect_closest(frame, config_));
}

std::optional<vision::ObstacleReport> LocalVision::collect() {
  if (pending_.empty()) return std::nullopt;
  auto r = pending_.front();
  pending_.pop_front();
  return r;
}

void LocalVision::set_param(std::string_view key, float value) {
  apply_vision_param(config_, key, value);
}

ppa::GrayPlane LocalWorld::get_frame() { return world::render_frame(scene_); }

void RemoteVision::submit(const ppa::GrayPlane& frame) { channel_.send(FrameMsg{frame}); }

std::optional<vision::ObstacleReport> RemoteVision::collect() {
  while (true) {
    auto m = channel_.receive(timeout_);
    if (!m) return std::nullopt;
    if (const auto* status = std::get_if<StatusMsg>(&*m)) {
      last_sequence_ = static_cast<std::uint32_t>(status->e_dis);
      continue;
    }
    if (const auto* report = std::get_if<ReportMsg>(&*m)) return from_message(*report);
    throw PeerError("vision server sent an unexpected message type");
  }
}

void RemoteVision::set_param(std::string_view key, float value) {
  channel_.send(ParamSetMsg{std::string(key), value});
}

Message RemoteWorld::expect(MsgType type) {
  auto m = channel_.receive(timeout_);
  if (!m) throw PeerError("world server closed the connection");
  if (type_of(*m) != type) throw PeerError("world server sent an unexpected message type");
  return std::move(*m);
}

world::Pose RemoteWorld::get_pose() {
  channel_.send(GetPoseMsg{});
  const auto pose = std::get<PoseMsg>(expect(MsgType::kPose));
  return {pose.x, pose.y, pose.heading};
}

ppa::GrayPlane RemoteWorld::get_frame() {
  channel_.send(GetFrameMsg{});
  return std::get<FrameMsg>(expect(MsgType::kFrame)).frame;
}

ReportMsg to_message(const vision::ObstacleReport& r) {
  return {static_cast<float>(r.closest_x), static_cast<float>(r.closest_y),
          static_cast<float>(r.closest_dis), static_cast<float>(r.direction)};
}

vision::ObstacleReport from_message(const ReportMsg& m) {
  return {m.closest_x, m.closest_y, m.closest_dis, static_cast<int>(std::lround(m.direction))};
}

vision::ObstacleReport to_wire_precision(const vision::ObstacleReport& r) {
  return from_message(to_message(r));
}

world::Pose to_wire_precision(const world::Pose& p) {
  return {static_cast<float>(p.x), static_cast<float>(p.y), static_cast<float>(p.heading)};
}

}  // namespace ppanav::bridge
