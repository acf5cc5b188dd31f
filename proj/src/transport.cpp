#include "nnsig/transport.hpp"

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "nnsig/errors.hpp"
#include "nnsig/wire.hpp"

namespace nnsig {

// ---------------------------------------------------------------- in-memory

namespace {
struct Channel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Bytes> frames;
  bool closed = false;
};

class InMemoryTransport : public Transport {
public:
  InMemoryTransport(std::shared_ptr<Channel> inbox, std::shared_ptr<Channel> outbox)
      : inbox_(std::move(inbox)), outbox_(std::move(outbox)) {}

  ~InMemoryTransport() override {
    std::lock_guard lock(outbox_->mu);
    outbox_->closed = true;
    outbox_->cv.notify_all();
  }

  void send_frame(const Bytes& frame) override {
    std::lock_guard lock(outbox_->mu);
    if (outbox_->closed) throw TransportError("peer endpoint closed");
    outbox_->frames.push_back(frame);
    outbox_->cv.notify_all();
  }

  Bytes receive_frame() override {
    std::unique_lock lock(inbox_->mu);
    inbox_->cv.wait(lock, [&] { return !inbox_->frames.empty() || inbox_->closed; });
    if (inbox_->frames.empty()) throw TransportError("peer endpoint closed");
    Bytes frame = std::move(inbox_->frames.front());
    inbox_->frames.pop_front();
    lock.unlock();
    const auto header = parse_frame_header(frame);
    if (frame.size() != kFrameHeaderSize + header.length) {
      throw MalformedFrame("frame length disagrees with header");
    }
    return frame;
  }

private:
  std::shared_ptr<Channel> inbox_;
  std::shared_ptr<Channel> outbox_;
};
} // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_in_memory_pair() {
  auto a_to_b = std::make_shared<Channel>();
  auto b_to_a = std::make_shared<Channel>();
  return {std::make_unique<InMemoryTransport>(b_to_a, a_to_b),
          std::make_unique<InMemoryTransport>(a_to_b, b_to_a)};
}

// ---------------------------------------------------------------- sockets

namespace {
std::string errno_text(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

void set_timeouts(int fd, std::chrono::seconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count());
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const auto service = std::to_string(port);
  const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints,
                               &result);
  if (rc != 0) {
    throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  return result;
}
} // namespace

std::unique_ptr<SocketTransport> SocketTransport::connect(const std::string& host,
                                                          std::uint16_t port,
                                                          std::chrono::seconds timeout) {
  addrinfo* addrs = resolve(host, port, false);
  int fd = -1;
  for (auto* ai = addrs; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(addrs);
  if (fd < 0) {
    throw TransportError(errno_text(("connect to " + host + ":" + std::to_string(port)).c_str()));
  }
  return std::make_unique<SocketTransport>(fd, timeout);
}

SocketTransport::SocketTransport(int fd, std::chrono::seconds timeout) : fd_(fd) {
  set_timeouts(fd_, timeout);
}

SocketTransport::~SocketTransport() {
  if (fd_ >= 0) ::close(fd_);
}

void SocketTransport::send_raw(const Bytes& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const auto n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("send"));
    }
    sent += static_cast<std::size_t>(n);
  }
}

void SocketTransport::send_frame(const Bytes& frame) { send_raw(frame); }

void SocketTransport::read_exact(std::uint8_t* out, std::size_t len, bool frame_started) {
  std::size_t got = 0;
  while (got < len) {
    const auto n = ::recv(fd_, out + got, len - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("recv"));
    }
    if (n == 0) {
      if (frame_started || got > 0) throw MalformedFrame("stream ended inside a frame");
      throw TransportError("peer closed the connection");
    }
    got += static_cast<std::size_t>(n);
  }
}

Bytes SocketTransport::receive_frame() {
  Bytes frame(kFrameHeaderSize);
  read_exact(frame.data(), 1, false);
  if (frame[0] < 0x01 || frame[0] > 0x03) parse_frame_header(frame);
  read_exact(frame.data() + 1, kFrameHeaderSize - 1, true);
  const auto header = parse_frame_header(frame);
  frame.resize(kFrameHeaderSize + header.length);
  read_exact(frame.data() + kFrameHeaderSize, header.length, true);
  return frame;
}

SocketListener::SocketListener(const std::string& host, std::uint16_t port) : fd_(-1), port_(0) {
  addrinfo* addrs = resolve(host, port, true);
  for (auto* ai = addrs; ai != nullptr; ai = ai->ai_next) {
    fd_ = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd_ < 0) continue;
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd_, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd_, 1) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(addrs);
  if (fd_ < 0) {
    throw TransportError(errno_text(("listen on " + host + ":" + std::to_string(port)).c_str()));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

SocketListener::~SocketListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<SocketTransport> SocketListener::accept(std::chrono::seconds timeout) {
  pollfd pfd{fd_, POLLIN, 0};
  const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count() * 1000));
  if (ready <= 0) {
    throw TransportError("no incoming connection within timeout");
  }
  const int client = ::accept(fd_, nullptr, nullptr);
  if (client < 0) throw TransportError(errno_text("accept"));
  return std::make_unique<SocketTransport>(client, timeout);
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint) {
  const auto colon = endpoint.rfind(':');
  if (colon == std::string::npos) {
    throw InvalidParameter("endpoint must look like host:port, got '" + endpoint + "'");
  }
  const auto host = endpoint.substr(0, colon);
  const auto port_text = endpoint.substr(colon + 1);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(port_text, &used);
    if (used != port_text.size()) throw std::invalid_argument("junk");
  } catch (const std::exception&) {
    throw InvalidParameter("invalid port '" + port_text + "'");
  }
  if (port > 65535) throw InvalidParameter("port out of range");
  return {host, static_cast<std::uint16_t>(port)};
}

} // namespace nnsig
