#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nnsig/bwn.hpp"
#include "nnsig/bytes.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

class SeededRng;
class Transport;

/// Setup both parties agree on before synchronizing θ.
struct SyncConfig {
  SynapticWeights w;
  VectorZp q;
  std::size_t u; // exponent draws per party

  std::size_t n() const { return w.n(); }
  const FieldParams& params() const { return w.params(); }
  /// Throws InvalidParameter when q does not match W or u == 0.
  void validate() const;
};

enum class SyncRole { Initiator, Responder };
enum class SyncState { Init, SentDh, HaveShared, SentPublic, Done };

const char* to_string(SyncState state);

/// One party's secrets: the DH exponent (da or db) in [1, p-1] and the
/// mixing exponents (alpha_i or beta_i) in [0, p-1].
struct SyncSecrets {
  std::uint64_t dh_exponent;
  std::vector<std::uint64_t> mix_exponents;
};

SyncSecrets draw_sync_secrets(const SyncConfig& config, SeededRng& rng);

/// One side of the threshold-vector synchronization. Calls must follow
/// dh_message -> receive_dh -> public_vector -> finalize; anything else
/// raises InvalidState and leaves the session untouched.
class SyncSession {
public:
  SyncSession(SyncConfig config, SyncRole role, SeededRng& rng);
  /// Throws InvalidParameter when the secrets are out of range.
  SyncSession(SyncConfig config, SyncRole role, SyncSecrets secrets);

  /// W^d. Init -> SentDh.
  MatrixZp dh_message();
  /// W_s = peer^d and r = hash_to_field(encode(W_s)). SentDh -> HaveShared.
  void receive_dh(const MatrixZp& peer_matrix);
  /// Q * H + r with H = sum_i W_s^{e_i}. HaveShared -> SentPublic.
  VectorZp public_vector();
  /// θ = local public + peer public. SentPublic -> Done.
  VectorZp finalize(const VectorZp& peer_public);

  SyncRole role() const { return role_; }
  SyncState state() const { return state_; }
  const SyncConfig& config() const { return config_; }
  const SyncSecrets& secrets() const { return secrets_; }
  const std::optional<MatrixZp>& shared_matrix() const { return shared_; }
  const std::optional<VectorZp>& mask() const { return mask_; }
  const std::optional<MatrixZp>& mix_matrix() const { return mix_; }
  const std::optional<VectorZp>& local_public() const { return local_public_; }
  const std::optional<VectorZp>& theta() const { return theta_; }

private:
  void require_state(SyncState expected, const char* op) const;

  SyncConfig config_;
  SyncRole role_;
  SyncSecrets secrets_;
  SyncState state_ = SyncState::Init;
  std::optional<MatrixZp> shared_;
  std::optional<VectorZp> mask_;
  std::optional<MatrixZp> mix_;
  std::optional<VectorZp> local_public_;
  std::optional<VectorZp> theta_;
};

/// Σ_i W_s^{e_i}.
MatrixZp mix_matrix(const MatrixZp& shared, std::span<const std::uint64_t> exponents);

/// Digest of the encoded setup; peers compare it before exchanging secrets.
std::array<std::uint8_t, 32> setup_digest(const SyncConfig& config);

/// Drives a session to completion over `transport`: hello exchange, DH
/// matrices, public vectors. Throws ParameterMismatch when the peer's hello
/// disagrees, MalformedFrame / UnknownTag / LengthOverflow on bad frames,
/// InvalidState on out-of-order messages, TransportError on I/O failure.
VectorZp run_protocol(SyncSession& session, Transport& transport);

// Shared setup file: "NNSIGSH1" ver p:u64 n:u32 u:u32 W(matrix) Q(vector).
Bytes serialize_sync_config(const SyncConfig& config);
SyncConfig parse_sync_config(std::span<const std::uint8_t> data);

// θ file: "NNSIGTH1" then the vector encoding. The file does not carry p;
// the reader supplies it from the key in use.
Bytes serialize_theta(const VectorZp& theta);
VectorZp parse_theta(std::span<const std::uint8_t> data, const FieldParams& params);

} // namespace nnsig
