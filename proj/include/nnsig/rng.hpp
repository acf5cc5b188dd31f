#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "nnsig/bytes.hpp"

namespace nnsig {

/// Deterministic generator: SHAKE256 in counter mode keyed by a seed and a
/// domain label. Two instances with equal (seed, domain) produce identical
/// streams. Satisfies UniformRandomBitGenerator so it plugs into <random>.
class SeededRng {
public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::span<const std::uint8_t> seed, std::string_view domain = {});

  /// Seeds from the operating system entropy source.
  static SeededRng from_entropy(std::string_view domain = {});

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [lo, hi], inclusive.
  std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);
  /// Uniform in [0, 1).
  double uniform_unit();

  void fill(std::span<std::uint8_t> out);

  /// Independent stream derived from this generator's key and a new label.
  SeededRng derive(std::string_view domain) const;

private:
  SeededRng() = default;
  void refill();

  static constexpr std::size_t kBlockSize = 136;
  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, kBlockSize> block_{};
  std::size_t pos_ = kBlockSize;
};

} // namespace nnsig
