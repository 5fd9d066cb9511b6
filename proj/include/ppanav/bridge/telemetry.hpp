#pragma once

// Operator console endpoint. The console is observe-and-tune only: the
// loop publishes the latest tick without ever waiting on a viewer, and
// parameter changes go through a ParamQueue applied at the next tick.
//
//   GET  /telemetry         server-sent events, one JSON snapshot per event,
//                           at most kMaxEventsPerSecond
//   GET  /telemetry/latest  the newest snapshot as a single JSON document
//   GET  /params            the parameter values in effect
//   POST /params            JSON object {key: number, ...}; all-or-nothing

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ppanav/bridge/loop.hpp"

namespace ppanav::bridge {

inline constexpr int kMaxEventsPerSecond = 15;

std::string base64_encode(std::span<const std::uint8_t> bytes);

/// Latest-value mailbox between the loop and console viewers.
class TelemetryHub {
 public:
  TelemetryHub(const nav::NavParams& nav, const vision::DetectorConfig& vision);

  /// Called from the loop; copies the tick and returns immediately.
  void publish(const TickContext& tick);

  /// Blocks until a snapshot newer than `after` exists or `timeout` passes.
  /// Returns the snapshot JSON and its sequence number.
  std::optional<std::pair<std::string, std::uint64_t>> wait_newer(std::uint64_t after,
                                                                   std::chrono::milliseconds timeout);
  std::string latest_json();
  std::string params_json();

  ParamQueue& params() { return queue_; }
  void close();

 private:
  struct Snapshot {
    TickRecord record;
    std::vector<std::uint8_t> frame;
    nav::NavParams nav;
    vision::DetectorConfig vision;
  };
  std::string to_json(const Snapshot& s) const;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<Snapshot> latest_;
  nav::NavParams nav_;
  vision::DetectorConfig vision_;
  std::uint64_t sequence_ = 0;
  bool closed_ = false;
  ParamQueue queue_;
};

class ConsoleServer {
 public:
  /// Binds 127.0.0.1:port (0 picks a free port) and starts serving on a
  /// background thread. Static files under `assets` are served at "/".
  ConsoleServer(TelemetryHub& hub, std::uint16_t port,
                std::optional<std::filesystem::path> assets = std::nullopt);
  ~ConsoleServer();
  ConsoleServer(const ConsoleServer&) = delete;
  ConsoleServer& operator=(const ConsoleServer&) = delete;

  std::uint16_t port() const { return port_; }
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint16_t port_ = 0;
};

}  // namespace ppanav::bridge
