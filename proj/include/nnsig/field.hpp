#pragma once

#include <compare>
#include <cstdint>

#include "nnsig/bytes.hpp"
#include "nnsig/op_counter.hpp"

namespace nnsig {

class SeededRng;

/// Element of Z_p, always held as its least non-negative residue.
struct FieldElement {
  std::uint64_t value = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

/// A prime modulus p with 3 <= p < 2^61, plus the arithmetic of Z_p.
///
/// The 61-bit cap keeps any sum of 64 products below 2^128, which the matrix
/// kernels rely on when they accumulate in unsigned __int128.
class FieldParams {
public:
  static constexpr unsigned kMaxModulusBits = 61;

  /// Throws InvalidParameter unless p is a prime in [3, 2^61).
  explicit FieldParams(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  /// Smallest k with 2^k > p - 1.
  unsigned bits_per_element() const { return bits_; }
  /// Width of the fixed little-endian element encoding.
  std::size_t bytes_per_element() const { return (bits_ + 7) / 8; }

  /// Reduces an arbitrary unsigned value.
  FieldElement element(std::uint64_t v) const { return {v % p_}; }

  FieldElement add(FieldElement a, FieldElement b) const {
    detail::count_add();
    return {add_raw(a.value, b.value)};
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    detail::count_add();
    return {sub_raw(a.value, b.value)};
  }
  FieldElement neg(FieldElement a) const { return {a.value == 0 ? 0 : p_ - a.value}; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    detail::count_mul();
    return {mul_raw(a.value, b.value)};
  }
  /// Throws DivisionByZero for a == 0.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  // Uncounted kernels on raw residues, for the matrix routines.
  std::uint64_t add_raw(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub_raw(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t inv_raw(std::uint64_t a) const;

  friend bool operator==(const FieldParams& a, const FieldParams& b) {
    return a.p_ == b.p_;
  }

private:
  std::uint64_t p_;
  unsigned bits_;
};

/// The modular activation: least non-negative residue of a signed integer.
FieldElement f_activate(std::int64_t x, const FieldParams& params);

/// Uniform over [0, p), or [1, p) when `nonzero` is set.
FieldElement sample_uniform(SeededRng& rng, const FieldParams& params, bool nonzero);

void encode_element(std::uint64_t value, const FieldParams& params, ByteWriter& out);
/// Throws MalformedEncoding when the decoded integer is not below p.
std::uint64_t decode_element(ByteReader& in, const FieldParams& params);

} // namespace nnsig
