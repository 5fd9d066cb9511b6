#include "ppanav/bridge/socket.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <thread>
#include <unistd.h>

namespace ppanav::bridge {
namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

sockaddr_in make_address(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw SocketError("not an IPv4 address: " + host);
  }
  return addr;
}

int wait_readable(int fd, std::chrono::milliseconds timeout) {
  pollfd p{fd, POLLIN, 0};
  int rc;
  do {
    rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
  } while (rc < 0 && errno == EINTR);
  if (rc < 0) throw SocketError(errno_text("poll"));
  return rc;
}

}  // namespace

TcpStream::TcpStream(int fd) : fd_(fd) {
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpStream::~TcpStream() { close(); }

TcpStream::TcpStream(TcpStream&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpStream::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port,
                             std::chrono::milliseconds patience) {
  const auto addr = make_address(host, port);
  const auto deadline = std::chrono::steady_clock::now() + patience;
  while (true) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw SocketError(errno_text("socket"));
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) == 0) {
      return TcpStream(fd);
    }
    const int err = errno;
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      errno = err;
      throw SocketError(errno_text(("connect " + host + ":" + std::to_string(port)).c_str()));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

void TcpStream::send_all(std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SocketError(errno_text("send"));
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::size_t TcpStream::receive_some(std::span<std::uint8_t> buffer, std::chrono::milliseconds timeout) {
  if (wait_readable(fd_, timeout) == 0) throw TimeoutError("receive timed out");
  while (true) {
    const ssize_t n = ::recv(fd_, buffer.data(), buffer.size(), 0);
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    if (errno == ECONNRESET) return 0;
    throw SocketError(errno_text("recv"));
  }
}

TcpListener::TcpListener(std::uint16_t port, const std::string& host) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw SocketError(errno_text("socket"));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  auto addr = make_address(host, port);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string msg = errno_text(("bind " + host + ":" + std::to_string(port)).c_str());
    ::close(fd_);
    throw SocketError(msg);
  }
  if (::listen(fd_, 4) != 0) {
    const std::string msg = errno_text("listen");
    ::close(fd_);
    throw SocketError(msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpStream TcpListener::accept(std::chrono::milliseconds timeout) {
  if (wait_readable(fd_, timeout) == 0) throw TimeoutError("accept timed out");
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) throw SocketError(errno_text("accept"));
  return TcpStream(fd);
}

void Channel::send(const Message& m) {
  out_.clear();
  encode_into(m, out_);
  stream_.send_all(out_);
}

std::optional<Message> Channel::receive(std::chrono::milliseconds timeout) {
  scratch_.resize(1 << 16);
  while (true) {
    if (auto m = decoder_.next()) return m;
    const std::size_t n = stream_.receive_some(scratch_, timeout);
    if (n == 0) return std::nullopt;
    decoder_.feed(std::span<const std::uint8_t>(scratch_.data(), n));
  }
}

}  // namespace ppanav::bridge
