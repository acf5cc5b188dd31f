#include "nnsig/sync.hpp"

#include <algorithm>
#include <string>
#include <string_view>

#include "nnsig/errors.hpp"
#include "nnsig/hash_to_field.hpp"
#include "nnsig/rng.hpp"
#include "nnsig/sig.hpp"
#include "nnsig/transport.hpp"
#include "nnsig/wire.hpp"
#include "nnsig/xof.hpp"

namespace nnsig {

namespace {
constexpr std::string_view kSetupMagic = "NNSIGSH1";
constexpr std::string_view kThetaMagic = "NNSIGTH1";

void expect_magic(ByteReader& in, std::string_view magic) {
  auto got = in.get_bytes(magic.size());
  if (!std::equal(got.begin(), got.end(), as_bytes(magic).begin())) {
    throw MalformedEncoding("bad magic, expected " + std::string(magic));
  }
}
} // namespace

void SyncConfig::validate() const {
  if (u == 0) throw InvalidParameter("u must be at least 1");
  if (q.size() != w.n() || !(q.params() == w.params())) {
    throw InvalidParameter("shared vector Q does not match W");
  }
}

const char* to_string(SyncState state) {
  switch (state) {
  case SyncState::Init: return "Init";
  case SyncState::SentDh: return "SentDh";
  case SyncState::HaveShared: return "HaveShared";
  case SyncState::SentPublic: return "SentPublic";
  case SyncState::Done: return "Done";
  }
  return "?";
}

SyncSecrets draw_sync_secrets(const SyncConfig& config, SeededRng& rng) {
  const auto p = config.params().modulus();
  SyncSecrets s{rng.uniform_between(1, p - 1), {}};
  s.mix_exponents.reserve(config.u);
  for (std::size_t i = 0; i < config.u; ++i) s.mix_exponents.push_back(rng.uniform_below(p));
  return s;
}

SyncSession::SyncSession(SyncConfig config, SyncRole role, SeededRng& rng)
    : SyncSession(config, role, draw_sync_secrets(config, rng)) {}

SyncSession::SyncSession(SyncConfig config, SyncRole role, SyncSecrets secrets)
    : config_(std::move(config)), role_(role), secrets_(std::move(secrets)) {
  config_.validate();
  const auto p = config_.params().modulus();
  if (secrets_.dh_exponent < 1 || secrets_.dh_exponent > p - 1) {
    throw InvalidParameter("DH exponent must lie in [1, p-1]");
  }
  if (secrets_.mix_exponents.size() != config_.u) {
    throw InvalidParameter("expected u mixing exponents");
  }
  for (auto e : secrets_.mix_exponents) {
    if (e >= p) throw InvalidParameter("mixing exponent must lie in [0, p-1]");
  }
}

void SyncSession::require_state(SyncState expected, const char* op) const {
  if (state_ != expected) {
    throw InvalidState(std::string(op) + " called in state " + to_string(state_) +
                       ", expected " + to_string(expected));
  }
}

MatrixZp SyncSession::dh_message() {
  require_state(SyncState::Init, "dh_message");
  auto out = mat_pow(config_.w.matrix(), secrets_.dh_exponent);
  state_ = SyncState::SentDh;
  return out;
}

void SyncSession::receive_dh(const MatrixZp& peer_matrix) {
  require_state(SyncState::SentDh, "receive_dh");
  if (peer_matrix.rows() != config_.n() || peer_matrix.cols() != config_.n() ||
      !(peer_matrix.params() == config_.params())) {
    throw DimensionMismatch("peer DH matrix does not match the shared setup");
  }
  auto shared = mat_pow(peer_matrix, secrets_.dh_exponent);
  ByteWriter encoded;
  encode_matrix(shared, encoded);
  mask_ = hash_to_field(encoded.bytes(), config_.n(), config_.params());
  shared_ = std::move(shared);
  state_ = SyncState::HaveShared;
}

MatrixZp mix_matrix(const MatrixZp& shared, std::span<const std::uint64_t> exponents) {
  MatrixZp sum(shared.params(), shared.rows(), shared.cols());
  for (auto e : exponents) sum = mat_add(sum, mat_pow(shared, e));
  return sum;
}

VectorZp SyncSession::public_vector() {
  require_state(SyncState::HaveShared, "public_vector");
  auto mix = nnsig::mix_matrix(*shared_, secrets_.mix_exponents);
  auto pub = vec_add(vec_mat(config_.q, mix), *mask_);
  mix_ = std::move(mix);
  local_public_ = pub;
  state_ = SyncState::SentPublic;
  return pub;
}

VectorZp SyncSession::finalize(const VectorZp& peer_public) {
  require_state(SyncState::SentPublic, "finalize");
  if (peer_public.size() != config_.n() || !(peer_public.params() == config_.params())) {
    throw DimensionMismatch("peer public vector does not match the shared setup");
  }
  theta_ = vec_add(*local_public_, peer_public);
  state_ = SyncState::Done;
  return *theta_;
}

std::array<std::uint8_t, 32> setup_digest(const SyncConfig& config) {
  const auto encoded = serialize_sync_config(config);
  const auto digest = shake256({as_bytes("nnsig-setup"), encoded}, 32);
  std::array<std::uint8_t, 32> out{};
  std::copy(digest.begin(), digest.end(), out.begin());
  return out;
}

namespace {
template <class T> T expect_message(Transport& transport, const FieldParams& params,
                                    const char* what) {
  auto message = wire_decode(transport.receive_frame(), params);
  if (auto* typed = std::get_if<T>(&message)) return std::move(*typed);
  throw InvalidState(std::string("expected ") + what + " frame");
}
} // namespace

VectorZp run_protocol(SyncSession& session, Transport& transport) {
  const auto& config = session.config();
  const HelloMessage mine{config.params().modulus(), static_cast<std::uint32_t>(config.n()),
                          static_cast<std::uint32_t>(config.u), setup_digest(config)};
  transport.send_frame(wire_encode(mine));
  const auto theirs = expect_message<HelloMessage>(transport, config.params(), "hello");
  if (theirs.p != mine.p) {
    throw ParameterMismatch("peer uses p = " + std::to_string(theirs.p) + ", local p = " +
                            std::to_string(mine.p));
  }
  if (theirs.n != mine.n || theirs.u != mine.u) {
    throw ParameterMismatch("peer uses n = " + std::to_string(theirs.n) + ", u = " +
                            std::to_string(theirs.u) + "; local n = " + std::to_string(mine.n) +
                            ", u = " + std::to_string(mine.u));
  }
  if (theirs.setup_digest != mine.setup_digest) {
    throw ParameterMismatch("peer shared setup (W, Q) differs from local setup");
  }

  transport.send_frame(wire_encode(DhMatrixMessage{session.dh_message()}));
  session.receive_dh(expect_message<DhMatrixMessage>(transport, config.params(), "DH").matrix);
  transport.send_frame(wire_encode(PublicVectorMessage{session.public_vector()}));
  return session.finalize(
      expect_message<PublicVectorMessage>(transport, config.params(), "public-vector").vector);
}

Bytes serialize_sync_config(const SyncConfig& config) {
  ByteWriter out;
  out.put_ascii(kSetupMagic);
  out.put_u8(kFormatVersion);
  out.put_u64(config.params().modulus());
  out.put_u32(static_cast<std::uint32_t>(config.n()));
  out.put_u32(static_cast<std::uint32_t>(config.u));
  encode_matrix(config.w.matrix(), out);
  encode_vector(config.q, out);
  return out.take();
}

SyncConfig parse_sync_config(std::span<const std::uint8_t> data) {
  ByteReader in(data);
  expect_magic(in, kSetupMagic);
  const auto version = in.get_u8();
  if (version != kFormatVersion) {
    throw UnsupportedVersion("unsupported setup version " + std::to_string(version));
  }
  try {
    FieldParams params(in.get_u64());
    const auto n = in.get_u32();
    const auto u = in.get_u32();
    auto w = decode_matrix(in, params);
    auto q = decode_vector(in, params);
    in.expect_end();
    if (w.rows() != n || q.size() != n) {
      throw MalformedEncoding("setup dimensions disagree with header");
    }
    SyncConfig config{SynapticWeights(std::move(w)), std::move(q), u};
    config.validate();
    return config;
  } catch (const InvalidParameter& e) {
    throw MalformedEncoding(std::string("invalid setup: ") + e.what());
  } catch (const SingularWeights& e) {
    throw MalformedEncoding(std::string("invalid setup: ") + e.what());
  }
}

Bytes serialize_theta(const VectorZp& theta) {
  ByteWriter out;
  out.put_ascii(kThetaMagic);
  encode_vector(theta, out);
  return out.take();
}

VectorZp parse_theta(std::span<const std::uint8_t> data, const FieldParams& params) {
  ByteReader in(data);
  expect_magic(in, kThetaMagic);
  auto theta = decode_vector(in, params);
  in.expect_end();
  return theta;
}

} // namespace nnsig
