#include "nnsig/sig.hpp"

#include <algorithm>
#include <string>
#include <string_view>

#include "nnsig/errors.hpp"
#include "nnsig/hash_to_field.hpp"
#include "nnsig/rng.hpp"

namespace nnsig {

namespace {
constexpr std::string_view kPublicMagic = "NNSIGPK1";
constexpr std::string_view kSecretMagic = "NNSIGSK1";
constexpr std::string_view kSignatureMagic = "NNSIGSG1";
constexpr std::size_t kKeygenAttempts = 32;
// Parse-side sanity caps; far above any usable parameter set.
constexpr std::uint64_t kMaxDimension = 1u << 16;

void check_split(std::size_t n, std::size_t l) {
  if (l < 1 || l >= n) {
    throw InvalidParameter("split index l = " + std::to_string(l) + " must satisfy 1 <= l < n");
  }
}

void require_vector(const VectorZp& v, std::size_t n, const FieldParams& params,
                    const char* what) {
  if (v.size() != n || !(v.params() == params)) {
    throw DimensionMismatch(std::string(what) + " does not match the key (length " +
                            std::to_string(v.size()) + ", expected " + std::to_string(n) + ")");
  }
}

/// c = f(W̄_θ θ), the bias shared by sign and verify.
VectorZp bias_term(const MatrixZp& w_theta_bar, const VectorZp& theta) {
  return mat_vec(w_theta_bar, theta);
}

bool tail_matches(const VectorZp& recovered, const VectorZp& expected) {
  const auto offset = recovered.size() - expected.size();
  auto tail = recovered.entries().subspan(offset);
  return std::equal(tail.begin(), tail.end(), expected.entries().begin());
}

void expect_magic(ByteReader& in, std::string_view magic) {
  auto got = in.get_bytes(magic.size());
  if (!std::equal(got.begin(), got.end(), as_bytes(magic).begin())) {
    throw MalformedEncoding("bad magic, expected " + std::string(magic));
  }
}

void expect_version(ByteReader& in) {
  const auto version = in.get_u8();
  if (version != kFormatVersion) {
    throw UnsupportedVersion("unsupported format version " + std::to_string(version));
  }
}

FieldParams read_params(ByteReader& in) {
  const auto p = in.get_u64();
  try {
    return FieldParams(p);
  } catch (const InvalidParameter& e) {
    throw MalformedEncoding(std::string("bad modulus: ") + e.what());
  }
}

std::uint64_t read_bounded(ByteReader& in, std::size_t width, std::uint64_t lo,
                           std::uint64_t hi, const char* what) {
  const auto v = in.get_uint(width);
  if (v < lo || v > hi) {
    throw MalformedEncoding(std::string(what) + " = " + std::to_string(v) + " out of range");
  }
  return v;
}

PermutationMatrix read_perm(ByteReader& in, std::size_t n) {
  std::vector<std::uint32_t> perm(n);
  for (auto& idx : perm) idx = in.get_u32();
  try {
    return PermutationMatrix(std::move(perm));
  } catch (const InvalidParameter& e) {
    throw MalformedEncoding(e.what());
  }
}
} // namespace

MessageDigestSplit split_digest(const VectorZp& h, std::size_t l) {
  check_split(h.size(), l);
  return {h, h.slice(0, l), h.slice(l, h.size() - l)};
}

MessageDigestSplit digest_message(std::span<const std::uint8_t> message, std::size_t n,
                                  std::size_t l, const FieldParams& params) {
  return split_digest(hash_to_field(message, n, params), l);
}

PublicKey derive_public_key(const SecretKey& sk) {
  const auto maps = unroll(sk.w, sk.schedule);
  return PublicKey{sk.l_x.apply(mat_pow(maps.w_x, sk.a)),
                   sk.l_theta.apply(mat_pow(maps.w_theta, sk.b)), sk.l};
}

KeyPair assemble_keypair(SynapticWeights w, AttentionSchedule schedule, std::uint64_t a,
                         std::uint64_t b, PermutationMatrix l_x, PermutationMatrix l_theta,
                         std::size_t l) {
  const auto n = w.n();
  if (schedule.n() != n || l_x.size() != n || l_theta.size() != n) {
    throw InvalidParameter("secret key components disagree on n");
  }
  if (!(schedule[0].params() == w.params())) {
    throw InvalidParameter("secret key components disagree on p");
  }
  check_split(n, l);
  SecretKey sk{std::move(l_x), std::move(l_theta), a, b, std::move(w), std::move(schedule), l};
  auto pk = derive_public_key(sk);
  return KeyPair{std::move(pk), std::move(sk)};
}

KeyPair keygen(const NetworkConfig& config, SeededRng& rng, std::optional<std::size_t> l) {
  config.validate();
  const auto p = config.params.modulus();
  if (p < 5) {
    throw InvalidParameter("keygen needs p >= 5 so that [2, p-2] is non-empty");
  }
  const auto split = l.value_or(default_split(config.n));
  check_split(config.n, split);

  auto weights = sample_weights(config, kKeygenAttempts);
  SeededRng state_rng(config.seed, "initial-state");
  auto initial_state = VectorZp::random(config.params, config.n, state_rng);
  auto schedule = generate_attention(config, initial_state);

  const auto a = rng.uniform_between(2, p - 2);
  const auto b = rng.uniform_between(2, p - 2);
  auto l_x = PermutationMatrix::random(config.n, rng);
  auto l_theta = PermutationMatrix::random(config.n, rng);
  return assemble_keypair(std::move(weights), std::move(schedule), a, b, std::move(l_x),
                          std::move(l_theta), split);
}

Signature sign(const SecretKey& sk, const VectorZp& theta, std::span<const std::uint8_t> message,
               SeededRng& rng) {
  const auto n = sk.n();
  const auto& f = sk.params();
  require_vector(theta, n, f, "theta");

  const auto digest = digest_message(message, n, sk.l, f);
  const auto r0 = VectorZp::random(f, n - sk.l, rng);
  const auto r1 = VectorZp::random(f, sk.l, rng);
  const auto x0 = concat(r0, digest.h0);
  const auto x1 = concat(r1, digest.h1);

  const auto maps = unroll(sk.w, sk.schedule);
  const auto c = bias_term(sk.l_theta.apply(mat_pow(maps.w_theta, sk.b)), theta);
  const auto unmask = mat_pow(mat_inv(maps.w_x), sk.a);
  const auto l_x_inv = sk.l_x.inverse();

  auto map_back = [&](const VectorZp& x) {
    return mat_vec(unmask, l_x_inv.apply(vec_sub(x, c)));
  };
  return Signature{map_back(x0), map_back(x1)};
}

namespace {
bool check_recovered(const PublicKey& pk, std::span<const std::uint8_t> message,
                     const VectorZp& h0_prime, const VectorZp& h1_prime) {
  const auto digest = digest_message(message, pk.n(), pk.l, pk.params());
  return tail_matches(h0_prime, digest.h0) && tail_matches(h1_prime, digest.h1);
}

void require_verify_shapes(const PublicKey& pk, const VectorZp& theta, const Signature& sig) {
  require_vector(theta, pk.n(), pk.params(), "theta");
  require_vector(sig.sigma0, pk.n(), pk.params(), "sigma0");
  require_vector(sig.sigma1, pk.n(), pk.params(), "sigma1");
}
} // namespace

bool verify(const PublicKey& pk, const VectorZp& theta, std::span<const std::uint8_t> message,
            const Signature& sig) {
  require_verify_shapes(pk, theta, sig);
  const auto c = bias_term(pk.w_theta_bar, theta);
  const auto h0_prime = vec_add(mat_vec(pk.w_x_bar, sig.sigma0), c);
  const auto h1_prime = vec_add(mat_vec(pk.w_x_bar, sig.sigma1), c);
  return check_recovered(pk, message, h0_prime, h1_prime);
}

bool verify_literal(const PublicKey& pk, const VectorZp& theta,
                          std::span<const std::uint8_t> message, const Signature& sig) {
  require_verify_shapes(pk, theta, sig);
  const auto c = bias_term(pk.w_theta_bar, theta);
  const auto h0_prime = mat_vec(pk.w_x_bar, vec_sub(sig.sigma0, c));
  const auto h1_prime = mat_vec(pk.w_x_bar, vec_sub(sig.sigma1, c));
  return check_recovered(pk, message, h0_prime, h1_prime);
}

// ---------------------------------------------------------------- encodings

Bytes serialize_public_key(const PublicKey& pk) {
  ByteWriter out;
  out.put_ascii(kPublicMagic);
  out.put_u8(kFormatVersion);
  out.put_u64(pk.params().modulus());
  out.put_u32(static_cast<std::uint32_t>(pk.n()));
  out.put_u32(static_cast<std::uint32_t>(pk.l));
  encode_matrix(pk.w_x_bar, out);
  encode_matrix(pk.w_theta_bar, out);
  return out.take();
}

PublicKey parse_public_key(std::span<const std::uint8_t> data) {
  ByteReader in(data);
  expect_magic(in, kPublicMagic);
  expect_version(in);
  const auto params = read_params(in);
  const auto n = read_bounded(in, 4, 2, kMaxDimension, "n");
  const auto l = read_bounded(in, 4, 1, n - 1, "l");
  auto w_x_bar = decode_matrix(in, params);
  auto w_theta_bar = decode_matrix(in, params);
  in.expect_end();
  for (const auto* m : {&w_x_bar, &w_theta_bar}) {
    if (m->rows() != n || m->cols() != n) {
      throw MalformedEncoding("public key matrix is not n x n");
    }
  }
  if (det(w_x_bar).value == 0) {
    throw MalformedEncoding("public key W̄_x is singular");
  }
  return PublicKey{std::move(w_x_bar), std::move(w_theta_bar), l};
}

Bytes serialize_secret_key(const SecretKey& sk) {
  const auto& f = sk.params();
  const auto n = sk.n();
  ByteWriter out;
  out.put_ascii(kSecretMagic);
  out.put_u8(kFormatVersion);
  out.put_u64(f.modulus());
  out.put_u64(n);
  out.put_u64(sk.l);
  out.put_u64(sk.rho());
  out.put_u64(sk.a);
  out.put_u64(sk.b);
  for (auto idx : sk.l_x.indices()) out.put_u32(idx);
  for (auto idx : sk.l_theta.indices()) out.put_u32(idx);

  Bytes packed((n * n + 7) / 8, 0);
  const auto entries = sk.w.matrix().entries();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k] != 1) packed[k / 8] |= static_cast<std::uint8_t>(1u << (k % 8));
  }
  out.put_bytes(packed);
  for (const auto& v : sk.schedule.vectors()) encode_vector_entries(v, out);
  return out.take();
}

SecretKey parse_secret_key(std::span<const std::uint8_t> data) {
  ByteReader in(data);
  expect_magic(in, kSecretMagic);
  expect_version(in);
  const auto params = read_params(in);
  const auto p = params.modulus();
  const auto n = read_bounded(in, 8, 2, kMaxDimension, "n");
  const auto l = read_bounded(in, 8, 1, n - 1, "l");
  const auto rho = read_bounded(in, 8, 1, kMaxDimension, "rho");
  const auto a = read_bounded(in, 8, 0, p - 1, "a");
  const auto b = read_bounded(in, 8, 0, p - 1, "b");
  auto l_x = read_perm(in, n);
  auto l_theta = read_perm(in, n);

  const auto packed = in.get_bytes((n * n + 7) / 8);
  std::vector<std::uint64_t> w_entries(n * n);
  for (std::size_t k = 0; k < w_entries.size(); ++k) {
    w_entries[k] = (packed[k / 8] >> (k % 8)) & 1u ? p - 1 : 1;
  }
  if (n * n % 8 != 0 && (packed.back() >> (n * n % 8)) != 0) {
    throw MalformedEncoding("non-zero padding bits in packed weights");
  }

  if (rho * n > in.remaining() / params.bytes_per_element()) {
    throw MalformedEncoding("attention schedule truncated");
  }
  std::vector<VectorZp> vectors;
  for (std::uint64_t j = 0; j < rho; ++j) {
    vectors.push_back(decode_vector_entries(in, params, n));
  }
  in.expect_end();

  try {
    SynapticWeights w(MatrixZp(params, n, n, std::move(w_entries)));
    AttentionSchedule schedule(std::move(vectors));
    return SecretKey{std::move(l_x), std::move(l_theta), a, b, std::move(w),
                     std::move(schedule), l};
  } catch (const InvalidParameter& e) {
    throw MalformedEncoding(std::string("invalid secret key: ") + e.what());
  } catch (const SingularWeights& e) {
    throw MalformedEncoding(std::string("invalid secret key: ") + e.what());
  }
}

Bytes serialize_signature(const Signature& sig) {
  ByteWriter out;
  out.put_ascii(kSignatureMagic);
  out.put_u8(kFormatVersion);
  out.put_u32(static_cast<std::uint32_t>(sig.sigma0.size()));
  encode_vector_entries(sig.sigma0, out);
  encode_vector_entries(sig.sigma1, out);
  return out.take();
}

Signature parse_signature(std::span<const std::uint8_t> data, const FieldParams& params) {
  ByteReader in(data);
  expect_magic(in, kSignatureMagic);
  expect_version(in);
  const auto n = read_bounded(in, 4, 1, kMaxDimension, "n");
  auto sigma0 = decode_vector_entries(in, params, n);
  auto sigma1 = decode_vector_entries(in, params, n);
  in.expect_end();
  return Signature{std::move(sigma0), std::move(sigma1)};
}

} // namespace nnsig
