#include "ppanav/bridge/telemetry.hpp"

#include <httplib.h>
#include <json.hpp>

namespace ppanav::bridge {

using nlohmann::json;

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  if (i + 1 == bytes.size()) {
    const std::uint32_t v = bytes[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

namespace {

json params_to_json(const nav::NavParams& nav, const vision::DetectorConfig& v) {
  return {{"threshold", v.threshold},
          {"d_safe", nav.d_safe},
          {"e_safe", nav.e_safe},
          {"k_safe", nav.k_safe},
          {"k_steer", nav.k_steer},
          {"d_vel", nav.d_vel},
          {"d_steer", nav.d_steer},
          {"distant_x_max", v.areas.distant_x_max},
          {"forbidden_x_min", v.areas.forbidden_x_min},
          {"safe_right_max", v.areas.safe_right_max},
          {"safe_left_min", v.areas.safe_left_min},
          {"right_y_min", v.areas.right_y_min},
          {"right_y_max", v.areas.right_y_max},
          {"left_y_min", v.areas.left_y_min},
          {"left_y_max", v.areas.left_y_max}};
}

}  // namespace

TelemetryHub::TelemetryHub(const nav::NavParams& nav, const vision::DetectorConfig& vision)
    : nav_(nav), vision_(vision) {}

void TelemetryHub::publish(const TickContext& tick) {
  Snapshot s{tick.record, {}, tick.nav, tick.vision};
  const auto px = tick.frame.pixels();
  s.frame.assign(px.begin(), px.end());
  {
    std::lock_guard lock(mutex_);
    latest_ = std::move(s);
    nav_ = tick.nav;
    vision_ = tick.vision;
    ++sequence_;
  }
  cv_.notify_all();
}

std::string TelemetryHub::to_json(const Snapshot& s) const {
  const auto& r = s.record;
  json doc{{"step", r.step},
           {"pose", {{"x", r.pose.x}, {"y", r.pose.y}, {"heading", r.pose.heading}}},
           {"mode", nav::to_string(r.mode)},
           {"theta_steer", r.theta_steer},
           {"report",
            {{"closest_x", r.report.closest_x},
             {"closest_y", r.report.closest_y},
             {"closest_dis", r.report.closest_dis},
             {"direction", r.report.direction}}},
           {"collision", r.collision},
           {"target_index", r.target_index},
           {"params", params_to_json(s.nav, s.vision)},
           {"frame", {{"width", ppa::kPlaneSize}, {"height", ppa::kPlaneSize},
                      {"encoding", "gray8-base64"}, {"data", base64_encode(s.frame)}}}};
  return doc.dump();
}

std::optional<std::pair<std::string, std::uint64_t>> TelemetryHub::wait_newer(
    std::uint64_t after, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || (latest_ && sequence_ > after); });
  if (closed_ || !latest_ || sequence_ <= after) return std::nullopt;
  Snapshot copy = *latest_;
  const std::uint64_t seq = sequence_;
  lock.unlock();
  return std::make_pair(to_json(copy), seq);
}

std::string TelemetryHub::latest_json() {
  std::unique_lock lock(mutex_);
  if (!latest_) return "{}";
  Snapshot copy = *latest_;
  lock.unlock();
  return to_json(copy);
}

std::string TelemetryHub::params_json() {
  std::lock_guard lock(mutex_);
  return params_to_json(nav_, vision_).dump();
}

void TelemetryHub::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  cv_.notify_all();
}

struct ConsoleServer::Impl {
  httplib::Server server;
  std::thread thread;
};

ConsoleServer::ConsoleServer(TelemetryHub& hub, std::uint16_t port,
                             std::optional<std::filesystem::path> assets)
    : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;

  if (assets) {
    srv.set_mount_point("/", assets->string());
  } else {
    srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ppanav console endpoint: /telemetry, /telemetry/latest, /params\n",
                      "text/plain");
    });
  }

  srv.Get("/telemetry/latest", [&hub](const httplib::Request&, httplib::Response& res) {
    res.set_content(hub.latest_json(), "application/json");
  });

  srv.Get("/telemetry", [&hub](const httplib::Request&, httplib::Response& res) {
    res.set_header("Cache-Control", "no-cache");
    auto last = std::make_shared<std::uint64_t>(0);
    auto last_sent = std::make_shared<std::chrono::steady_clock::time_point>();
    res.set_chunked_content_provider(
        "text/event-stream", [&hub, last, last_sent](std::size_t, httplib::DataSink& sink) {
          constexpr auto kMinGap = std::chrono::milliseconds(1000 / kMaxEventsPerSecond);
          const auto now = std::chrono::steady_clock::now();
          if (now - *last_sent < kMinGap) std::this_thread::sleep_for(kMinGap - (now - *last_sent));
          auto snap = hub.wait_newer(*last, std::chrono::milliseconds(1000));
          if (!sink.is_writable()) return false;
          if (!snap) {
            static constexpr char kKeepAlive[] = ": keep-alive\n\n";
            return sink.write(kKeepAlive, sizeof(kKeepAlive) - 1);
          }
          *last = snap->second;
          *last_sent = std::chrono::steady_clock::now();
          const std::string event = "data: " + snap->first + "\n\n";
          return sink.write(event.data(), event.size());
        });
  });

  srv.Get("/params", [&hub](const httplib::Request&, httplib::Response& res) {
    res.set_content(hub.params_json(), "application/json");
  });

  srv.Post("/params", [&hub](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(R"({"error":"body must be a JSON object"})", "application/json");
      return;
    }
    if (!body.is_object()) {
      res.status = 400;
      res.set_content(R"({"error":"body must be a JSON object"})", "application/json");
      return;
    }
    for (const auto& [key, value] : body.items()) {
      if ((!is_nav_param(key) && !is_vision_param(key)) || !value.is_number()) {
        res.status = 400;
        res.set_content(json{{"error", "unknown parameter or non-numeric value"}, {"key", key}}.dump(),
                        "application/json");
        return;
      }
    }
    for (const auto& [key, value] : body.items()) hub.params().push(key, value.get<double>());
    res.status = 202;
    res.set_content(json{{"queued", body}}.dump(), "application/json");
  });

  if (port == 0) {
    port_ = static_cast<std::uint16_t>(srv.bind_to_any_port("127.0.0.1"));
  } else if (srv.bind_to_port("127.0.0.1", port)) {
    port_ = port;
  }
  if (port_ == 0) throw SocketError("console: cannot bind port " + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
}

ConsoleServer::~ConsoleServer() { stop(); }

void ConsoleServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace ppanav::bridge
