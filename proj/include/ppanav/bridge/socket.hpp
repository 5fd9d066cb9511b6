#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppanav/bridge/protocol.hpp"

namespace ppanav::bridge {

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SocketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Owning wrapper around a connected TCP socket.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd);
  ~TcpStream();
  TcpStream(TcpStream&& other) noexcept;
  TcpStream& operator=(TcpStream&& other) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;

  /// Connects to host:port, retrying until `patience` elapses.
  static TcpStream connect(const std::string& host, std::uint16_t port,
                           std::chrono::milliseconds patience = std::chrono::milliseconds(2000));

  void send_all(std::span<const std::uint8_t> bytes);
  /// Reads whatever is available. Returns 0 bytes on orderly peer shutdown.
  /// Throws TimeoutError if nothing arrives within `timeout`.
  std::size_t receive_some(std::span<std::uint8_t> buffer, std::chrono::milliseconds timeout);

  void shutdown();
  bool valid() const { return fd_ >= 0; }

 private:
  void close();
  int fd_ = -1;
};

class TcpListener {
 public:
  /// Binds to 127.0.0.1:port (port 0 picks an ephemeral port).
  explicit TcpListener(std::uint16_t port, const std::string& host = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  /// Blocks until a client connects or `timeout` elapses (TimeoutError).
  TcpStream accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Message-level view of a TcpStream.
class Channel {
 public:
  explicit Channel(TcpStream stream) : stream_(std::move(stream)) {}

  void send(const Message& m);
  /// Next message; nullopt when the peer closed the connection.
  std::optional<Message> receive(std::chrono::milliseconds timeout);

  TcpStream& stream() { return stream_; }

 private:
  TcpStream stream_;
  StreamDecoder decoder_;
  std::vector<std::uint8_t> scratch_;
  std::vector<std::uint8_t> out_;
};

}  // namespace ppanav::bridge
