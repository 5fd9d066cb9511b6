#pragma once

// Framed binary protocol shared by the vision server, the world server and
// the interface loop.
//
//   offset 0  0x53 0x43   magic ("SC")
//   offset 2  0x01        version
//   offset 3  type
//   offset 4  u32 LE      payload length
//   offset 8  payload     (all multi-byte fields little-endian)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ppanav/ppa/plane.hpp"

namespace ppanav::bridge {

inline constexpr std::uint8_t kMagic0 = 0x53;
inline constexpr std::uint8_t kMagic1 = 0x43;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::uint32_t kMaxPayload = 1u << 20;

enum class MsgType : std::uint8_t {
  kFrame = 0x01,
  kReport = 0x02,
  kParamSet = 0x03,
  kGetPose = 0x10,
  kPose = 0x11,
  kSetSteer = 0x12,
  kSetSpeed = 0x13,
  kStep = 0x14,      // world: advance one timestep, no reply
  kGetFrame = 0x15,  // world: reply with FRAME of the current view
  kStatus = 0x20,
};

struct FrameMsg {
  ppa::GrayPlane frame;
  friend bool operator==(const FrameMsg&, const FrameMsg&) = default;
};

struct ReportMsg {
  float closest_x = 0.0f;
  float closest_y = 0.0f;
  float closest_dis = 0.0f;
  float direction = 0.0f;
  friend bool operator==(const ReportMsg&, const ReportMsg&) = default;
};

struct ParamSetMsg {
  std::string key;  // ASCII, at most 255 bytes
  float value = 0.0f;
  friend bool operator==(const ParamSetMsg&, const ParamSetMsg&) = default;
};

struct GetPoseMsg {
  friend bool operator==(const GetPoseMsg&, const GetPoseMsg&) = default;
};

struct PoseMsg {
  float x = 0.0f;
  float y = 0.0f;
  float heading = 0.0f;
  friend bool operator==(const PoseMsg&, const PoseMsg&) = default;
};

struct SetSteerMsg {
  float radians = 0.0f;
  friend bool operator==(const SetSteerMsg&, const SetSteerMsg&) = default;
};

struct SetSpeedMsg {
  float meters_per_second = 0.0f;
  friend bool operator==(const SetSpeedMsg&, const SetSpeedMsg&) = default;
};

struct StepMsg {
  friend bool operator==(const StepMsg&, const StepMsg&) = default;
};

struct GetFrameMsg {
  friend bool operator==(const GetFrameMsg&, const GetFrameMsg&) = default;
};

struct StatusMsg {
  std::uint8_t mode = 0;
  float e_dis = 0.0f;
  friend bool operator==(const StatusMsg&, const StatusMsg&) = default;
};

using Message = std::variant<FrameMsg, ReportMsg, ParamSetMsg, GetPoseMsg, PoseMsg, SetSteerMsg,
                             SetSpeedMsg, StepMsg, GetFrameMsg, StatusMsg>;

MsgType type_of(const Message& m);

class ProtocolError : public std::runtime_error {
 public:
  enum class Kind { kBadMagic, kBadVersion, kUnknownType, kLengthOverflow, kBadPayload };

  ProtocolError(Kind kind, std::size_t offset, const std::string& what);

  Kind kind() const { return kind_; }
  /// Offset of the offending byte, relative to the start of the message.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

std::vector<std::uint8_t> encode(const Message& m);
void encode_into(const Message& m, std::vector<std::uint8_t>& out);

struct Decoded {
  std::optional<Message> message;  // empty: need more bytes
  std::size_t consumed = 0;        // 0 when message is empty
};

/// Decodes one message from the front of `bytes`. Throws ProtocolError on
/// a malformed header or payload.
Decoded decode(std::span<const std::uint8_t> bytes);

/// Incremental decoder for a byte stream arriving in arbitrary chunks.
class StreamDecoder {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  /// Next complete message, or nullopt until more bytes arrive.
  std::optional<Message> next();
  std::size_t buffered() const { return buffer_.size() - start_; }

 private:
  std::vector<std::uint8_t> buffer_;
  std::size_t start_ = 0;
};

}  // namespace ppanav::bridge
