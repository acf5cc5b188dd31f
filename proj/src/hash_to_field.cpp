#include "nnsig/hash_to_field.hpp"

#include <vector>

#include "nnsig/xof.hpp"

namespace nnsig {

namespace {
// Reads fixed-width chunks LSB-first out of a byte string.
class BitStream {
public:
  explicit BitStream(const Bytes& data) : data_(data) {}

  bool take(unsigned width, std::uint64_t& out) {
    if (bit_pos_ + width > data_.size() * 8) return false;
    std::uint64_t v = 0;
    for (unsigned b = 0; b < width; ++b, ++bit_pos_) {
      const auto bit = (data_[bit_pos_ / 8] >> (bit_pos_ % 8)) & 1u;
      v |= static_cast<std::uint64_t>(bit) << b;
    }
    out = v;
    return true;
  }

private:
  const Bytes& data_;
  std::size_t bit_pos_ = 0;
};
} // namespace

VectorZp hash_to_field(std::span<const std::uint8_t> message, std::size_t n,
                       const FieldParams& params) {
  ByteWriter prefix;
  prefix.put_ascii(kHashDomainTag);
  prefix.put_u64(params.modulus());
  prefix.put_u32(static_cast<std::uint32_t>(n));

  const unsigned width = params.bits_per_element();
  // Acceptance rate is above 1/2, so twice the bare need plus slack rarely
  // runs dry. If it does, squeeze a longer prefix-compatible stream.
  std::size_t out_len = (2 * n * width + 7) / 8 + 64;
  for (;;) {
    const Bytes stream = shake256({prefix.bytes(), message}, out_len);
    BitStream bits(stream);
    std::vector<std::uint64_t> out;
    out.reserve(n);
    std::uint64_t chunk = 0;
    while (out.size() < n && bits.take(width, chunk)) {
      if (chunk < params.modulus()) out.push_back(chunk);
    }
    if (out.size() == n) return VectorZp(params, std::move(out));
    out_len *= 2;
  }
}

} // namespace nnsig
