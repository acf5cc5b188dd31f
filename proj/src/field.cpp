#include "nnsig/field.hpp"

#include <bit>
#include <string>

#include "nnsig/errors.hpp"
#include "nnsig/rng.hpp"

namespace nnsig {

namespace {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}
} // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldParams::FieldParams(std::uint64_t p) : p_(p), bits_(0) {
  if (p < 3) {
    throw InvalidParameter("modulus " + std::to_string(p) + " is below 3");
  }
  if (p >> kMaxModulusBits) {
    throw InvalidParameter("modulus exceeds 61 bits");
  }
  if (!is_prime_u64(p)) {
    throw InvalidParameter("modulus " + std::to_string(p) + " is not prime");
  }
  bits_ = static_cast<unsigned>(std::bit_width(p - 1));
}

std::uint64_t FieldParams::inv_raw(std::uint64_t a) const {
  if (a % p_ == 0) {
    throw DivisionByZero();
  }
  return powmod(a, p_ - 2, p_);
}

FieldElement FieldParams::inv(FieldElement a) const {
  detail::count_inv();
  return {inv_raw(a.value)};
}

FieldElement FieldParams::pow(FieldElement a, std::uint64_t e) const {
  return {powmod(a.value, e, p_)};
}

FieldElement f_activate(std::int64_t x, const FieldParams& params) {
  const auto p = static_cast<std::int64_t>(params.modulus());
  std::int64_t r = x % p;
  if (r < 0) r += p;
  return {static_cast<std::uint64_t>(r)};
}

FieldElement sample_uniform(SeededRng& rng, const FieldParams& params, bool nonzero) {
  const auto p = params.modulus();
  if (nonzero) {
    return {1 + rng.uniform_below(p - 1)};
  }
  return {rng.uniform_below(p)};
}

void encode_element(std::uint64_t value, const FieldParams& params, ByteWriter& out) {
  out.put_uint(value, params.bytes_per_element());
}

std::uint64_t decode_element(ByteReader& in, const FieldParams& params) {
  auto v = in.get_uint(params.bytes_per_element());
  if (v >= params.modulus()) {
    throw MalformedEncoding("field element " + std::to_string(v) + " is not below p = " +
                            std::to_string(params.modulus()));
  }
  return v;
}

} // namespace nnsig
