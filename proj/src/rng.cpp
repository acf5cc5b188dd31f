#include "nnsig/rng.hpp"

#include <algorithm>
#include <random>

#include "nnsig/errors.hpp"
#include "nnsig/xof.hpp"

namespace nnsig {

namespace {
constexpr std::string_view kRngTag = "nnsig-rng";

std::array<std::uint8_t, 32> derive_key(std::span<const std::uint8_t> secret,
                                        std::string_view domain) {
  ByteWriter w;
  w.put_ascii(kRngTag);
  w.put_u32(static_cast<std::uint32_t>(domain.size()));
  w.put_ascii(domain);
  auto digest = shake256({w.bytes(), secret}, 32);
  std::array<std::uint8_t, 32> key{};
  std::copy(digest.begin(), digest.end(), key.begin());
  return key;
}
} // namespace

SeededRng::SeededRng(std::span<const std::uint8_t> seed, std::string_view domain)
    : key_(derive_key(seed, domain)) {}

SeededRng SeededRng::from_entropy(std::string_view domain) {
  std::random_device rd;
  std::array<std::uint8_t, 32> seed{};
  for (auto& b : seed) {
    b = static_cast<std::uint8_t>(rd());
  }
  return SeededRng(seed, domain);
}

SeededRng SeededRng::derive(std::string_view domain) const {
  SeededRng child;
  child.key_ = derive_key(key_, domain);
  return child;
}

void SeededRng::refill() {
  ByteWriter ctr;
  ctr.put_u64(counter_++);
  auto block = shake256({key_, ctr.bytes()}, kBlockSize);
  std::copy(block.begin(), block.end(), block_.begin());
  pos_ = 0;
}

SeededRng::result_type SeededRng::operator()() {
  if (pos_ + 8 > kBlockSize) {
    refill();
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(block_[pos_ + i]) << (8 * i);
  }
  pos_ += 8;
  return v;
}

std::uint64_t SeededRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidParameter("uniform_below: bound must be positive");
  }
  // Reject the top partial copy of [0, bound) so every residue is equally likely.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v > limit);
  return v % bound;
}

std::uint64_t SeededRng::uniform_between(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) {
    throw InvalidParameter("uniform_between: empty range");
  }
  if (lo == 0 && hi == max()) {
    return (*this)();
  }
  return lo + uniform_below(hi - lo + 1);
}

double SeededRng::uniform_unit() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ >= kBlockSize) {
      refill();
    }
    b = block_[pos_++];
  }
}

} // namespace nnsig
