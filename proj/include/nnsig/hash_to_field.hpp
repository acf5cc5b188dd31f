#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "nnsig/field.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

inline constexpr std::string_view kHashDomainTag = "nnsig-v1";

/// Hashes `message` to n uniform elements of Z_p.
///
/// SHAKE256 absorbs "nnsig-v1" || p (u64 LE) || n (u32 LE) || message; the
/// output stream is read as consecutive bits_per_element-bit little-endian
/// chunks and every chunk >= p is rejected.
VectorZp hash_to_field(std::span<const std::uint8_t> message, std::size_t n,
                       const FieldParams& params);

} // namespace nnsig
