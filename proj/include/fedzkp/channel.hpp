#pragma once

// Newline-framed byte streams: file descriptors (TCP, stdio), an in-memory
// pipe for tests, and a recorder that keeps every line in order.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fedzkp {

class Channel {
 public:
  virtual ~Channel() = default;
  /// Throws TransportError when the peer is gone.
  virtual void send_line(const std::string& line) = 0;
  /// nullopt on end of stream; throws TransportError on I/O failure.
  virtual std::optional<std::string> recv_line() = 0;
};

inline constexpr std::size_t kMaxLineBytes = std::size_t{64} << 20;

class FdChannel final : public Channel {
 public:
  /// When `owned`, both descriptors are closed on destruction.
  FdChannel(int in_fd, int out_fd, bool owned);
  ~FdChannel() override;
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  void send_line(const std::string& line) override;
  std::optional<std::string> recv_line() override;

 private:
  int in_fd_;
  int out_fd_;
  bool owned_;
  std::string buffer_;
  bool eof_ = false;
};

/// Two connected in-memory endpoints; safe to use from two threads.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_pipe_pair();

struct RecordedLine {
  bool sent = false;
  std::string line;
};

class RecordingChannel final : public Channel {
 public:
  explicit RecordingChannel(Channel& inner) : inner_(inner) {}

  void send_line(const std::string& line) override;
  std::optional<std::string> recv_line() override;

  const std::vector<RecordedLine>& lines() const { return lines_; }
  /// Every line in order, newline-terminated.
  std::string transcript() const;

 private:
  Channel& inner_;
  std::vector<RecordedLine> lines_;
};

class TcpListener {
 public:
  /// Port 0 picks a free port.
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<FdChannel> accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

std::unique_ptr<FdChannel> tcp_connect(const std::string& host, std::uint16_t port);

/// "host:port" -> pair; throws ParameterError.
std::pair<std::string, std::uint16_t> parse_address(const std::string& address);

}  // namespace fedzkp
