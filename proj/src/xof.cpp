#include "nnsig/xof.hpp"

#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace nnsig {

Bytes shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
               std::size_t out_len) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1) {
    throw std::runtime_error("SHAKE256 unavailable");
  }
  for (auto part : parts) {
    if (!part.empty() && EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1) {
      throw std::runtime_error("SHAKE256 update failed");
    }
  }
  Bytes out(out_len);
  if (out_len > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out_len) != 1) {
    throw std::runtime_error("SHAKE256 squeeze failed");
  }
  return out;
}

} // namespace nnsig
