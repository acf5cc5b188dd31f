#include "nnsig/bytes.hpp"

#include "nnsig/errors.hpp"

namespace nnsig {

void ByteWriter::put_uint(std::uint64_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    buf_.push_back(static_cast<std::uint8_t>(i < 8 ? (v >> (8 * i)) & 0xFF : 0));
  }
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::put_ascii(std::string_view text) { put_bytes(as_bytes(text)); }

std::uint64_t ByteReader::get_uint(std::size_t width) {
  if (width > 8) {
    throw InvalidParameter("integer width above 8 bytes");
  }
  auto raw = get_bytes(width);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(raw[i]) << (8 * i);
  }
  return v;
}

std::span<const std::uint8_t> ByteReader::get_bytes(std::size_t count) {
  if (count > remaining()) {
    throw MalformedEncoding("truncated input: need " + std::to_string(count) +
                            " bytes, have " + std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, count);
  pos_ += count;
  return out;
}

void ByteReader::expect_end() const {
  if (!at_end()) {
    throw MalformedEncoding(std::to_string(remaining()) + " trailing bytes");
  }
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0F]);
  }
  return out;
}

namespace {
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
} // namespace

Bytes from_hex(std::string_view text) {
  if (text.size() % 2 != 0) {
    throw InvalidParameter("hex string has odd length");
  }
  Bytes out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(text[2 * i]);
    int lo = hex_value(text[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw InvalidParameter("invalid hex digit");
    }
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

} // namespace nnsig
