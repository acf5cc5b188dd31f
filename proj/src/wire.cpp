#include "nnsig/wire.hpp"

#include <algorithm>
#include <string>

#include "nnsig/errors.hpp"

namespace nnsig {

namespace {
template <class... Ts> struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;
} // namespace

Bytes wire_encode(const WireMessage& message) {
  ByteWriter payload;
  const FrameTag tag = std::visit(
      Overloaded{
          [&](const DhMatrixMessage& m) {
            encode_matrix(m.matrix, payload);
            return FrameTag::DhMatrix;
          },
          [&](const PublicVectorMessage& m) {
            encode_vector(m.vector, payload);
            return FrameTag::PublicVector;
          },
          [&](const HelloMessage& m) {
            payload.put_u64(m.p);
            payload.put_u32(m.n);
            payload.put_u32(m.u);
            payload.put_bytes(m.setup_digest);
            return FrameTag::Hello;
          },
      },
      message);

  ByteWriter frame;
  frame.put_u8(static_cast<std::uint8_t>(tag));
  frame.put_u32(static_cast<std::uint32_t>(payload.bytes().size()));
  frame.put_bytes(payload.bytes());
  return frame.take();
}

FrameHeader parse_frame_header(std::span<const std::uint8_t> header) {
  if (!header.empty()) {
    const auto tag = header[0];
    if (tag != 0x01 && tag != 0x02 && tag != 0x03) {
      throw UnknownTag("unknown frame tag 0x" + to_hex(header.subspan(0, 1)));
    }
  }
  if (header.size() < kFrameHeaderSize) {
    throw MalformedFrame("truncated frame header");
  }
  ByteReader in(header.subspan(1, 4));
  const auto length = in.get_u32();
  if (length > kMaxFramePayload) {
    throw LengthOverflow("frame payload of " + std::to_string(length) + " bytes exceeds limit");
  }
  return {static_cast<FrameTag>(header[0]), length};
}

WireMessage wire_decode(std::span<const std::uint8_t> frame, const FieldParams& params) {
  const auto header = parse_frame_header(frame);
  const auto body = frame.subspan(kFrameHeaderSize);
  if (body.size() < header.length) {
    throw MalformedFrame("frame payload truncated");
  }
  if (body.size() > header.length) {
    throw MalformedFrame("trailing bytes after frame");
  }
  try {
    ByteReader in(body);
    WireMessage out = [&]() -> WireMessage {
      switch (header.tag) {
      case FrameTag::DhMatrix:
        return DhMatrixMessage{decode_matrix(in, params)};
      case FrameTag::PublicVector:
        return PublicVectorMessage{decode_vector(in, params)};
      case FrameTag::Hello: {
        HelloMessage hello{};
        hello.p = in.get_u64();
        hello.n = in.get_u32();
        hello.u = in.get_u32();
        auto digest = in.get_bytes(hello.setup_digest.size());
        std::copy(digest.begin(), digest.end(), hello.setup_digest.begin());
        return hello;
      }
      }
      throw UnknownTag("unknown frame tag");
    }();
    in.expect_end();
    return out;
  } catch (const MalformedEncoding& e) {
    throw MalformedFrame(std::string("bad payload: ") + e.what());
  } catch (const InvalidParameter& e) {
    throw MalformedFrame(std::string("bad payload: ") + e.what());
  }
}

} // namespace nnsig
