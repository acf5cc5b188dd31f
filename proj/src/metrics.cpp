#include "nnsig/metrics.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "nnsig/rng.hpp"

namespace nnsig {

namespace {
std::uint64_t ceil_bytes(double bits) { return static_cast<std::uint64_t>(std::ceil(bits / 8.0)); }

constexpr std::array<ReferenceRow, 3> kReferenceRows{{
    {80, 257, 26, 10, 208, 1764, 1570, 1104},
    {100, 257, 33, 10, 264, 2409, 2180, 1467},
    {128, 257, 43, 10, 344, 3999, 3701, 2345},
}};
} // namespace

FormulaSizes formula_sizes(std::size_t n, std::uint64_t p, std::size_t rho) {
  const double lp = std::log2(static_cast<double>(p));
  const double ln = std::log2(static_cast<double>(n));
  const double nn = static_cast<double>(n);
  FormulaSizes out{};
  out.pk_bytes = ceil_bytes(2 * nn * nn * lp);
  out.sk_bytes = ceil_bytes(2 * nn * ln) + ceil_bytes(3 * lp) + ceil_bytes(nn * nn * lp) +
                 ceil_bytes(static_cast<double>(rho) * nn * lp);
  out.sig_bits = 2 * n * n + 7 * n;
  out.hash_bits = n * (std::bit_width(p) - 1);
  return out;
}

MeasuredSizes measured_sizes(const PublicKey& pk, const SecretKey& sk, const Signature& sig) {
  return {serialize_public_key(pk).size(), serialize_secret_key(sk).size(),
          serialize_signature(sig).size()};
}

std::span<const ReferenceRow> reference_rows() { return kReferenceRows; }

OpCountReport op_count_report(std::size_t n, std::uint64_t p) {
  const double nn = static_cast<double>(n);
  const double lp = std::log2(static_cast<double>(p));
  return OpCountReport{n,
                       p,
                       nn * nn * nn * lp,
                       2 * nn * nn * nn * lp + 2 * nn * nn * lp,
                       2.0 / 3.0 * nn * nn * nn + 6 * nn * nn - nn,
                       3 * nn * nn - nn,
                       std::nullopt,
                       std::nullopt,
                       std::nullopt};
}

OpCountReport instrumented_op_counts(std::size_t n, std::uint64_t p, std::size_t rho,
                                     std::span<const std::uint8_t> seed) {
  auto report = op_count_report(n, p);
  const FieldParams params(p);
  const NetworkConfig config{n, params, rho, Bytes(seed.begin(), seed.end())};
  SeededRng rng(seed, "bench");

  std::optional<KeyPair> keys;
  {
    ScopedOpCount count;
    keys = keygen(config, rng);
    report.keygen_measured = count.tally();
  }
  const auto theta = VectorZp::random(params, n, rng);
  const auto message = as_bytes("operation count probe");
  std::optional<Signature> sig;
  {
    ScopedOpCount count;
    sig = sign(keys->sk, theta, message, rng);
    report.sign_measured = count.tally();
  }
  {
    ScopedOpCount count;
    verify(keys->pk, theta, message, *sig);
    report.verify_measured = count.tally();
  }
  return report;
}

} // namespace nnsig
