#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nnsig/field.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

class SeededRng;

/// Given A in GL(n, Z_p) and B, find (a, L) with B = L * A^a.
struct DlMdpInstance {
  MatrixZp a_mat;
  MatrixZp b_mat;
};

struct DlMdpSolution {
  std::uint64_t exponent;
  PermutationMatrix perm;

  friend auto operator<=>(const DlMdpSolution&, const DlMdpSolution&) = default;
  friend bool operator==(const DlMdpSolution&, const DlMdpSolution&) = default;
};

struct PlantedInstance {
  DlMdpInstance instance;
  DlMdpSolution planted;
};

/// True iff perm * a_mat^exponent == b_mat.
bool is_solution(const DlMdpInstance& instance, const DlMdpSolution& candidate);

/// Samples invertible A, exponent uniform in [1, p-1], uniform permutation.
PlantedInstance make_instance(std::size_t n, const FieldParams& params, SeededRng& rng);

inline constexpr std::size_t kDefaultNLimit = 4;
inline constexpr std::uint64_t kDefaultPLimit = 31;

/// Exhaustive search over [1, p-1] x S_n. Returns every solution, sorted by
/// exponent then permutation. Throws LimitExceeded past the guardrails.
std::vector<DlMdpSolution> brute_force_solve(const DlMdpInstance& instance,
                                             std::size_t n_limit = kDefaultNLimit,
                                             std::uint64_t p_limit = kDefaultPLimit);

/// Exponent known: enumerate permutations only.
std::vector<PermutationMatrix> solve_with_exponent(const DlMdpInstance& instance,
                                                   std::uint64_t exponent,
                                                   std::size_t n_limit = kDefaultNLimit);
/// Permutation known: search exponents a in [1, p-1] with L^{-1} B = A^a.
std::vector<std::uint64_t> solve_with_perm(const DlMdpInstance& instance,
                                           const PermutationMatrix& perm,
                                           std::uint64_t p_limit = kDefaultPLimit);

// ---------------------------------------------------------------- estimators

using BigInt = boost::multiprecision::cpp_int;

/// log2 of a positive arbitrary-precision integer, accurate to double precision.
double log2_big(const BigInt& x);

/// log2((p - 1) * n! * n^3 * log2 p), evaluated as a sum of logarithms.
double classical_security_bits(std::size_t n, const BigInt& p);

/// Security levels implied by the brute-force cost T of the hard problem.
struct SecurityEstimate {
  double classical_bits; // log2 T
  double quantum_bits;   // 2 log2 T
  double level;
  bool meets_classical;        // log2 T >= level
  bool meets_quantum_strict;  // log2 T >= 2 * level
  bool meets_quantum_halved;  // 2 log2 T >= level
};

SecurityEstimate estimate_security(std::size_t n, const BigInt& p, double level);
/// Quantum inequality with the doubled requirement: log2 T >= 2 * level.
bool quantum_security_ok_strict(std::size_t n, const BigInt& p, double level);
/// Quantum inequality with the doubled cost: 2 * log2 T >= level.
bool quantum_security_ok_halved(std::size_t n, const BigInt& p, double level);

/// log2((n!)^2 * n^(2n) * (p - 2)).
double keyspace_bits(std::size_t n, const BigInt& p);

/// Largest prime strictly below 2^bits (bits >= 3).
BigInt largest_prime_below_pow2(unsigned bits);

} // namespace nnsig
