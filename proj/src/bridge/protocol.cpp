#include "ppanav/bridge/protocol.hpp"

#include <bit>
#include <cstring>

namespace ppanav::bridge {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

float get_f32(std::span<const std::uint8_t> b, std::size_t at) {
  return std::bit_cast<float>(get_u32(b, at));
}

std::optional<std::uint32_t> fixed_payload(MsgType t) {
  switch (t) {
    case MsgType::kFrame: return static_cast<std::uint32_t>(ppa::kPlanePixels);
    case MsgType::kReport: return 16;
    case MsgType::kGetPose:
    case MsgType::kStep:
    case MsgType::kGetFrame: return 0;
    case MsgType::kPose: return 12;
    case MsgType::kSetSteer:
    case MsgType::kSetSpeed: return 4;
    case MsgType::kStatus: return 5;
    case MsgType::kParamSet: return std::nullopt;
  }
  return std::nullopt;
}

bool known_type(std::uint8_t t) {
  switch (static_cast<MsgType>(t)) {
    case MsgType::kFrame:
    case MsgType::kReport:
    case MsgType::kParamSet:
    case MsgType::kGetPose:
    case MsgType::kPose:
    case MsgType::kSetSteer:
    case MsgType::kSetSpeed:
    case MsgType::kStep:
    case MsgType::kGetFrame:
    case MsgType::kStatus: return true;
  }
  return false;
}

struct PayloadWriter {
  std::vector<std::uint8_t>& out;

  void operator()(const FrameMsg& m) const {
    const auto px = m.frame.pixels();
    out.insert(out.end(), px.begin(), px.end());
  }
  void operator()(const ReportMsg& m) const {
    put_f32(out, m.closest_x);
    put_f32(out, m.closest_y);
    put_f32(out, m.closest_dis);
    put_f32(out, m.direction);
  }
  void operator()(const ParamSetMsg& m) const {
    if (m.key.size() > 255) throw std::invalid_argument("PARAM_SET key longer than 255 bytes");
    out.push_back(static_cast<std::uint8_t>(m.key.size()));
    out.insert(out.end(), m.key.begin(), m.key.end());
    put_f32(out, m.value);
  }
  void operator()(const GetPoseMsg&) const {}
  void operator()(const PoseMsg& m) const {
    put_f32(out, m.x);
    put_f32(out, m.y);
    put_f32(out, m.heading);
  }
  void operator()(const SetSteerMsg& m) const { put_f32(out, m.radians); }
  void operator()(const SetSpeedMsg& m) const { put_f32(out, m.meters_per_second); }
  void operator()(const StepMsg&) const {}
  void operator()(const GetFrameMsg&) const {}
  void operator()(const StatusMsg& m) const {
    out.push_back(m.mode);
    put_f32(out, m.e_dis);
  }
};

Message parse_payload(MsgType type, std::span<const std::uint8_t> p) {
  switch (type) {
    case MsgType::kFrame: return FrameMsg{ppa::GrayPlane(std::vector<std::uint8_t>(p.begin(), p.end()))};
    case MsgType::kReport: return ReportMsg{get_f32(p, 0), get_f32(p, 4), get_f32(p, 8), get_f32(p, 12)};
    case MsgType::kParamSet: {
      if (p.empty()) throw ProtocolError(ProtocolError::Kind::kBadPayload, kHeaderSize, "PARAM_SET payload empty");
      const std::size_t key_len = p[0];
      if (p.size() != 1 + key_len + 4) {
        throw ProtocolError(ProtocolError::Kind::kBadPayload, kHeaderSize,
                            "PARAM_SET key length disagrees with payload length");
      }
      std::string key(p.begin() + 1, p.begin() + 1 + static_cast<std::ptrdiff_t>(key_len));
      for (std::size_t i = 0; i < key.size(); ++i) {
        const auto c = static_cast<unsigned char>(key[i]);
        if (c < 0x20 || c > 0x7e) {
          throw ProtocolError(ProtocolError::Kind::kBadPayload, kHeaderSize + 1 + i,
                              "PARAM_SET key is not printable ASCII");
        }
      }
      return ParamSetMsg{std::move(key), get_f32(p, 1 + key_len)};
    }
    case MsgType::kGetPose: return GetPoseMsg{};
    case MsgType::kPose: return PoseMsg{get_f32(p, 0), get_f32(p, 4), get_f32(p, 8)};
    case MsgType::kSetSteer: return SetSteerMsg{get_f32(p, 0)};
    case MsgType::kSetSpeed: return SetSpeedMsg{get_f32(p, 0)};
    case MsgType::kStep: return StepMsg{};
    case MsgType::kGetFrame: return GetFrameMsg{};
    case MsgType::kStatus: return StatusMsg{p[0], get_f32(p, 1)};
  }
  throw ProtocolError(ProtocolError::Kind::kUnknownType, 3, "unknown message type");
}

}  // namespace

ProtocolError::ProtocolError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
      kind_(kind),
      offset_(offset) {}

MsgType type_of(const Message& m) {
  static constexpr MsgType kTypes[] = {MsgType::kFrame,    MsgType::kReport,   MsgType::kParamSet,
                                       MsgType::kGetPose,  MsgType::kPose,     MsgType::kSetSteer,
                                       MsgType::kSetSpeed, MsgType::kStep,     MsgType::kGetFrame,
                                       MsgType::kStatus};
  return kTypes[m.index()];
}

void encode_into(const Message& m, std::vector<std::uint8_t>& out) {
  const std::size_t start = out.size();
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(type_of(m)));
  put_u32(out, 0);
  std::visit(PayloadWriter{out}, m);
  const auto len = static_cast<std::uint32_t>(out.size() - start - kHeaderSize);
  for (int i = 0; i < 4; ++i) out[start + 4 + i] = static_cast<std::uint8_t>(len >> (8 * i));
}

std::vector<std::uint8_t> encode(const Message& m) {
  std::vector<std::uint8_t> out;
  encode_into(m, out);
  return out;
}

Decoded decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) return {};
  if (bytes[0] != kMagic0) throw ProtocolError(ProtocolError::Kind::kBadMagic, 0, "bad magic");
  if (bytes[1] != kMagic1) throw ProtocolError(ProtocolError::Kind::kBadMagic, 1, "bad magic");
  if (bytes[2] != kVersion) throw ProtocolError(ProtocolError::Kind::kBadVersion, 2, "unsupported version");
  if (!known_type(bytes[3])) throw ProtocolError(ProtocolError::Kind::kUnknownType, 3, "unknown message type");
  const auto type = static_cast<MsgType>(bytes[3]);
  const std::uint32_t len = get_u32(bytes, 4);
  if (const auto fixed = fixed_payload(type)) {
    if (len != *fixed) {
      if (type != MsgType::kFrame && len > kMaxPayload) {
        throw ProtocolError(ProtocolError::Kind::kLengthOverflow, 4, "payload length overflow");
      }
      throw ProtocolError(ProtocolError::Kind::kBadPayload, 4,
                          "payload length " + std::to_string(len) + " does not match message type");
    }
  } else if (len > kMaxPayload) {
    throw ProtocolError(ProtocolError::Kind::kLengthOverflow, 4, "payload length overflow");
  }
  if (bytes.size() < kHeaderSize + len) return {};
  Decoded d;
  d.message = parse_payload(type, bytes.subspan(kHeaderSize, len));
  d.consumed = kHeaderSize + len;
  return d;
}

void StreamDecoder::feed(std::span<const std::uint8_t> bytes) {
  if (start_ > 0 && start_ * 2 >= buffer_.size()) {
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(start_));
    start_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<Message> StreamDecoder::next() {
  const auto view = std::span<const std::uint8_t>(buffer_).subspan(start_);
  Decoded d = decode(view);
  if (!d.message) return std::nullopt;
  start_ += d.consumed;
  return std::move(d.message);
}

}  // namespace ppanav::bridge
