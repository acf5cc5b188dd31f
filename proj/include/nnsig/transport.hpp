#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "nnsig/bytes.hpp"

namespace nnsig {

/// Ordered, reliable, duplex frame delivery.
class Transport {
public:
  virtual ~Transport() = default;
  virtual void send_frame(const Bytes& frame) = 0;
  /// Returns one complete frame (header + payload). Header validation
  /// follows parse_frame_header; a stream that ends mid-frame raises
  /// MalformedFrame, a closed or failed connection raises TransportError.
  virtual Bytes receive_frame() = 0;
};

/// Two connected in-process endpoints. Safe to drive from two threads.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_in_memory_pair();

/// TCP stream carrying length-prefixed frames.
class SocketTransport : public Transport {
public:
  static constexpr std::chrono::seconds kDefaultTimeout{30};

  /// Throws TransportError when the connection cannot be established.
  static std::unique_ptr<SocketTransport> connect(const std::string& host, std::uint16_t port,
                                                  std::chrono::seconds timeout = kDefaultTimeout);

  explicit SocketTransport(int fd, std::chrono::seconds timeout = kDefaultTimeout);
  ~SocketTransport() override;
  SocketTransport(const SocketTransport&) = delete;
  SocketTransport& operator=(const SocketTransport&) = delete;

  void send_frame(const Bytes& frame) override;
  Bytes receive_frame() override;
  /// Writes raw bytes with no framing; used to exercise peers' decoders.
  void send_raw(const Bytes& data);

private:
  void read_exact(std::uint8_t* out, std::size_t len, bool frame_started);
  int fd_;
};

/// Listening TCP socket that hands out one SocketTransport per accept().
class SocketListener {
public:
  /// Port 0 picks an ephemeral port; see port().
  SocketListener(const std::string& host, std::uint16_t port);
  ~SocketListener();
  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<SocketTransport> accept(
      std::chrono::seconds timeout = SocketTransport::kDefaultTimeout);

private:
  int fd_;
  std::uint16_t port_;
};

/// Splits "host:port". Throws InvalidParameter.
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint);

} // namespace nnsig
