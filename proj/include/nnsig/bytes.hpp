#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nnsig {

using Bytes = std::vector<std::uint8_t>;

/// Appends little-endian integers and raw bytes to a growing buffer.
class ByteWriter {
public:
  void put_u8(std::uint8_t v) { buf_.push_back(v); }
  void put_u32(std::uint32_t v) { put_uint(v, 4); }
  void put_u64(std::uint64_t v) { put_uint(v, 8); }
  void put_uint(std::uint64_t v, std::size_t width);
  void put_bytes(std::span<const std::uint8_t> data);
  void put_ascii(std::string_view text);

  const Bytes& bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }

private:
  Bytes buf_;
};

/// Sequential little-endian reader over a borrowed buffer.
///
/// Every getter throws MalformedEncoding when fewer bytes remain than
/// requested. Callers that need a different error class translate it.
class ByteReader {
public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t get_u8() { return static_cast<std::uint8_t>(get_uint(1)); }
  std::uint32_t get_u32() { return static_cast<std::uint32_t>(get_uint(4)); }
  std::uint64_t get_u64() { return get_uint(8); }
  std::uint64_t get_uint(std::size_t width);
  std::span<const std::uint8_t> get_bytes(std::size_t count);

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;

private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> data);
/// Throws InvalidParameter on odd length or a non-hex digit.
Bytes from_hex(std::string_view text);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

} // namespace nnsig
