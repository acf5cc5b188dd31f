#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>

#include "nnsig/bytes.hpp"
#include "nnsig/field.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

// Frame layout: tag (1 byte) | payload length (u32 LE) | payload.
enum class FrameTag : std::uint8_t {
  DhMatrix = 0x01,     // payload: matrix encoding
  PublicVector = 0x02, // payload: vector encoding
  Hello = 0x03,        // payload: p u64, n u32, u u32, 32-byte setup digest
};

inline constexpr std::size_t kFrameHeaderSize = 5;
inline constexpr std::uint32_t kMaxFramePayload = 1u << 24;

struct DhMatrixMessage {
  MatrixZp matrix;
  friend bool operator==(const DhMatrixMessage&, const DhMatrixMessage&) = default;
};

struct PublicVectorMessage {
  VectorZp vector;
  friend bool operator==(const PublicVectorMessage&, const PublicVectorMessage&) = default;
};

/// Parameter announcement exchanged before the protocol proper, so peers
/// with different setups fail fast instead of computing unrelated θ.
struct HelloMessage {
  std::uint64_t p;
  std::uint32_t n;
  std::uint32_t u;
  std::array<std::uint8_t, 32> setup_digest;
  friend bool operator==(const HelloMessage&, const HelloMessage&) = default;
};

using WireMessage = std::variant<DhMatrixMessage, PublicVectorMessage, HelloMessage>;

struct FrameHeader {
  FrameTag tag;
  std::uint32_t length;
};

Bytes wire_encode(const WireMessage& message);

/// Validates a 5-byte header. Throws MalformedFrame when fewer than 5 bytes
/// are given, UnknownTag for an unassigned tag byte, LengthOverflow for a
/// declared payload above kMaxFramePayload.
FrameHeader parse_frame_header(std::span<const std::uint8_t> header);

/// Decodes exactly one frame. Truncated or trailing bytes and undecodable
/// payloads raise MalformedFrame.
WireMessage wire_decode(std::span<const std::uint8_t> frame, const FieldParams& params);

} // namespace nnsig
