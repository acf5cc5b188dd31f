#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "nnsig/bytes.hpp"

namespace nnsig {

/// SHAKE256 over the concatenation of `parts`, squeezed to `out_len` bytes.
/// Output for a longer `out_len` extends output for a shorter one.
Bytes shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
               std::size_t out_len);

inline Bytes shake256(std::span<const std::uint8_t> input, std::size_t out_len) {
  return shake256({input}, out_len);
}

} // namespace nnsig
