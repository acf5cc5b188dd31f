#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "nnsig/op_counter.hpp"
#include "nnsig/sig.hpp"

namespace nnsig {

/// Sizes from the closed-form expressions, log2 taken as the real logarithm
/// inside every ceiling.
struct FormulaSizes {
  std::uint64_t pk_bytes;  // ceil(2 n^2 log2 p / 8)
  std::uint64_t sk_bytes;  // ceil(2n log2 n / 8) + ceil(3 log2 p / 8) + ceil(n^2 log2 p / 8) + ceil(rho n log2 p / 8)
  std::uint64_t sig_bits;  // 2 n^2 + 7 n
  std::uint64_t hash_bits; // n * floor(log2 p)
};

/// Byte lengths of the real encodings.
struct MeasuredSizes {
  std::uint64_t pk_bytes;
  std::uint64_t sk_bytes;
  std::uint64_t sig_bytes;
  std::uint64_t sig_bits() const { return 8 * sig_bytes; }
};

struct SchemeProfile {
  std::size_t n;
  std::uint64_t p;
  std::size_t rho;
  std::size_t l;
  FormulaSizes formula;
  std::optional<MeasuredSizes> measured;
};

FormulaSizes formula_sizes(std::size_t n, std::uint64_t p, std::size_t rho);
MeasuredSizes measured_sizes(const PublicKey& pk, const SecretKey& sk, const Signature& sig);

/// Published comparison row for one (p, n, rho) parameter set.
struct ReferenceRow {
  unsigned security_level;
  std::uint64_t p;
  std::size_t n;
  std::size_t rho;
  std::uint64_t hash_bits;
  std::uint64_t sig_bits;
  std::uint64_t pk_bytes;
  std::uint64_t sk_bytes;
};

std::span<const ReferenceRow> reference_rows();

struct OpCountReport {
  std::size_t n;
  std::uint64_t p;
  double keygen_formula;     // n^3 log2 p
  double keygen_bound;       // 2 n^3 log2 p + 2 n^2 log2 p
  double sign_formula;       // (2/3) n^3 + 6 n^2 - n
  double verify_formula;     // 3 n^2 - n
  std::optional<OpTally> keygen_measured;
  std::optional<OpTally> sign_measured;
  std::optional<OpTally> verify_measured;
};

/// Closed-form counts only.
OpCountReport op_count_report(std::size_t n, std::uint64_t p);

/// Closed forms plus tallies from one keygen, sign and verify run.
OpCountReport instrumented_op_counts(std::size_t n, std::uint64_t p, std::size_t rho,
                                     std::span<const std::uint8_t> seed);

} // namespace nnsig
