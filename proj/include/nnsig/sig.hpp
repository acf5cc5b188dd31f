#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "nnsig/bwn.hpp"
#include "nnsig/bytes.hpp"
#include "nnsig/field.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

class SeededRng;

inline constexpr std::uint8_t kFormatVersion = 0x01;

/// Public key (W̄_x, W̄_θ) together with the split index l.
struct PublicKey {
  MatrixZp w_x_bar;
  MatrixZp w_theta_bar;
  std::size_t l;

  std::size_t n() const { return w_x_bar.rows(); }
  const FieldParams& params() const { return w_x_bar.params(); }

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  PermutationMatrix l_x;
  PermutationMatrix l_theta;
  std::uint64_t a;
  std::uint64_t b;
  SynapticWeights w;
  AttentionSchedule schedule;
  std::size_t l;

  std::size_t n() const { return w.n(); }
  std::size_t rho() const { return schedule.rho(); }
  const FieldParams& params() const { return w.params(); }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Signature {
  VectorZp sigma0;
  VectorZp sigma1;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// h = h0 || h1 with h0 the first l coordinates.
struct MessageDigestSplit {
  VectorZp h;
  VectorZp h0;
  VectorZp h1;
};

MessageDigestSplit split_digest(const VectorZp& h, std::size_t l);
MessageDigestSplit digest_message(std::span<const std::uint8_t> message, std::size_t n,
                                  std::size_t l, const FieldParams& params);

/// Default split index floor(n / 2).
inline std::size_t default_split(std::size_t n) { return n / 2; }

/// Recomputes (L_x W_x^a, L_θ W_θ^b) from the secret fields.
PublicKey derive_public_key(const SecretKey& sk);

/// Builds a key pair from explicit secret components. Throws InvalidParameter
/// on inconsistent sizes or l outside [1, n).
KeyPair assemble_keypair(SynapticWeights w, AttentionSchedule schedule, std::uint64_t a,
                         std::uint64_t b, PermutationMatrix l_x, PermutationMatrix l_theta,
                         std::size_t l);

/// Samples weights and attention from config.seed, then a, b in [2, p-2] and
/// the two permutation masks from `rng`. Requires p >= 5.
KeyPair keygen(const NetworkConfig& config, SeededRng& rng,
               std::optional<std::size_t> l = std::nullopt);

/// Embeds the digest behind fresh randomness (x0 = r0 || h0, x1 = r1 || h1)
/// and maps each through W_x^{-a} L_x^{-1} (x_i - f(W̄_θ θ)).
Signature sign(const SecretKey& sk, const VectorZp& theta, std::span<const std::uint8_t> message,
               SeededRng& rng);

/// Accepts iff the last l coordinates of f(W̄_x σ0 + c) equal h0 and the last
/// n-l coordinates of f(W̄_x σ1 + c) equal h1, where c = f(W̄_θ θ).
/// Throws DimensionMismatch when θ or σ do not match the key.
bool verify(const PublicKey& pk, const VectorZp& theta, std::span<const std::uint8_t> message,
            const Signature& sig);

/// The printed verification variant f(W̄_x (σ - c)). It does not invert sign
/// and is kept only for comparison runs.
bool verify_literal(const PublicKey& pk, const VectorZp& theta,
                          std::span<const std::uint8_t> message, const Signature& sig);

// File formats. Integers are little-endian; matrices and field elements use
// the matz encodings.
//   public key: "NNSIGPK1" ver p:u64 n:u32 l:u32 W̄_x W̄_θ
//   secret key: "NNSIGSK1" ver p n l rho a b (u64 each) L_x L_θ (u32 indices)
//               W (1 bit per entry, 1 -> 0, p-1 -> 1) schedule (rho*n elements)
//   signature:  "NNSIGSG1" ver n:u32 σ0 σ1 (n elements each)
Bytes serialize_public_key(const PublicKey& pk);
PublicKey parse_public_key(std::span<const std::uint8_t> data);
Bytes serialize_secret_key(const SecretKey& sk);
SecretKey parse_secret_key(std::span<const std::uint8_t> data);
Bytes serialize_signature(const Signature& sig);
/// The signature format does not carry p; the verifier's key supplies it.
Signature parse_signature(std::span<const std::uint8_t> data, const FieldParams& params);

} // namespace nnsig
