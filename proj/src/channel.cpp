#include "fedzkp/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

}  // namespace

// ---------------------------------------------------------------------------
// FdChannel

FdChannel::FdChannel(int in_fd, int out_fd, bool owned) : in_fd_(in_fd), out_fd_(out_fd), owned_(owned) {}

FdChannel::~FdChannel() {
  if (!owned_) return;
  ::close(in_fd_);
  if (out_fd_ != in_fd_) ::close(out_fd_);
}

void FdChannel::send_line(const std::string& line) {
  std::string data = line;
  data.push_back('\n');
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(out_fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) {
      const ssize_t w = ::write(out_fd_, data.data() + off, data.size() - off);
      if (w < 0) {
        if (errno == EINTR) continue;
        throw TransportError(errno_text("write"));
      }
      off += static_cast<std::size_t>(w);
      continue;
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("send"));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> FdChannel::recv_line() {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    if (eof_) {
      if (buffer_.empty()) return std::nullopt;
      throw TransportError("stream ended inside a line");
    }
    if (buffer_.size() > kMaxLineBytes) throw TransportError("line exceeds size limit");
    char chunk[65536];
    const ssize_t n = ::read(in_fd_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("read"));
    }
    if (n == 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

// ---------------------------------------------------------------------------
// In-memory pipe

namespace {

struct Queue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::string> lines;
  bool closed = false;
};

class PipeEnd final : public Channel {
 public:
  PipeEnd(std::shared_ptr<Queue> in, std::shared_ptr<Queue> out) : in_(std::move(in)), out_(std::move(out)) {}
  ~PipeEnd() override {
    std::lock_guard lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

  void send_line(const std::string& line) override {
    std::lock_guard lock(out_->mu);
    out_->lines.push_back(line);
    out_->cv.notify_all();
  }

  std::optional<std::string> recv_line() override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->lines.empty() || in_->closed; });
    if (in_->lines.empty()) return std::nullopt;
    std::string line = std::move(in_->lines.front());
    in_->lines.pop_front();
    return line;
  }

 private:
  std::shared_ptr<Queue> in_;
  std::shared_ptr<Queue> out_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_pipe_pair() {
  auto a_to_b = std::make_shared<Queue>();
  auto b_to_a = std::make_shared<Queue>();
  return {std::make_unique<PipeEnd>(b_to_a, a_to_b), std::make_unique<PipeEnd>(a_to_b, b_to_a)};
}

// ---------------------------------------------------------------------------
// Recording

void RecordingChannel::send_line(const std::string& line) {
  inner_.send_line(line);
  lines_.push_back({true, line});
}

std::optional<std::string> RecordingChannel::recv_line() {
  auto line = inner_.recv_line();
  if (line) lines_.push_back({false, *line});
  return line;
}

std::string RecordingChannel::transcript() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l.line;
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// TCP

namespace {

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
    throw TransportError("cannot resolve host " + host);
  }
  sockaddr_in addr{};
  std::memcpy(&addr, res->ai_addr, sizeof addr);
  ::freeaddrinfo(res);
  addr.sin_port = htons(port);
  return addr;
}

}  // namespace

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = resolve(host, port);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError(errno_text("socket"));
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 16) != 0) {
    const std::string msg = errno_text("bind/listen");
    ::close(fd_);
    throw TransportError(msg);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<FdChannel> TcpListener::accept() {
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return std::make_unique<FdChannel>(fd, fd, true);
    }
    if (errno != EINTR) throw TransportError(errno_text("accept"));
  }
}

std::unique_ptr<FdChannel> tcp_connect(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = resolve(host, port);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError(errno_text("socket"));
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    const std::string msg = errno_text("connect");
    ::close(fd);
    throw TransportError(msg);
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<FdChannel>(fd, fd, true);
}

std::pair<std::string, std::uint16_t> parse_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw ParameterError("address must be host:port");
  }
  const std::string port_text = address.substr(colon + 1);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(port_text, &used);
    if (used != port_text.size()) throw ParameterError("bad port");
  } catch (const std::exception&) {
    throw ParameterError("address port is not a number");
  }
  if (port > 65535) throw ParameterError("address port out of range");
  return {address.substr(0, colon), static_cast<std::uint16_t>(port)};
}

}  // namespace fedzkp
