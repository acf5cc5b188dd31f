#include "nnsig/dlmdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <boost/multiprecision/miller_rabin.hpp>

#include "nnsig/errors.hpp"
#include "nnsig/rng.hpp"

namespace nnsig {

namespace {
void check_instance_shape(const DlMdpInstance& instance) {
  if (!instance.a_mat.is_square() || instance.a_mat.rows() != instance.b_mat.rows() ||
      instance.a_mat.cols() != instance.b_mat.cols()) {
    throw DimensionMismatch("DL-MDP instance needs square A and B of equal size");
  }
  if (!(instance.a_mat.params() == instance.b_mat.params())) {
    throw DimensionMismatch("DL-MDP instance mixes moduli");
  }
}

void check_n_limit(std::size_t n, std::size_t n_limit) {
  if (n > n_limit) {
    throw LimitExceeded("brute force refuses n = " + std::to_string(n) + " (limit " +
                        std::to_string(n_limit) + ")");
  }
}

void check_p_limit(std::uint64_t p, std::uint64_t p_limit) {
  if (p > p_limit) {
    throw LimitExceeded("brute force refuses p = " + std::to_string(p) + " (limit " +
                        std::to_string(p_limit) + ")");
  }
}

// True iff row i of `target` equals row perm[i] of `power` for every i.
bool rows_match(const MatrixZp& target, const MatrixZp& power,
                std::span<const std::uint32_t> perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto want = target.row(i);
    auto have = power.row(perm[i]);
    if (!std::equal(want.begin(), want.end(), have.begin())) return false;
  }
  return true;
}

std::vector<PermutationMatrix> matching_perms(const MatrixZp& target, const MatrixZp& power) {
  std::vector<std::uint32_t> perm(target.rows());
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<PermutationMatrix> found;
  do {
    if (rows_match(target, power, perm)) found.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}
} // namespace

bool is_solution(const DlMdpInstance& instance, const DlMdpSolution& candidate) {
  check_instance_shape(instance);
  return candidate.perm.apply(mat_pow(instance.a_mat, candidate.exponent)) == instance.b_mat;
}

PlantedInstance make_instance(std::size_t n, const FieldParams& params, SeededRng& rng) {
  if (n < 2) throw InvalidParameter("DL-MDP instances need n >= 2");
  auto a_mat = MatrixZp::random_invertible(params, n, rng);
  const std::uint64_t exponent = rng.uniform_between(1, params.modulus() - 1);
  auto perm = PermutationMatrix::random(n, rng);
  auto b_mat = perm.apply(mat_pow(a_mat, exponent));
  return {DlMdpInstance{std::move(a_mat), std::move(b_mat)},
          DlMdpSolution{exponent, std::move(perm)}};
}

std::vector<DlMdpSolution> brute_force_solve(const DlMdpInstance& instance,
                                             std::size_t n_limit, std::uint64_t p_limit) {
  check_instance_shape(instance);
  const auto n = instance.a_mat.rows();
  const auto p = instance.a_mat.params().modulus();
  check_n_limit(n, n_limit);
  check_p_limit(p, p_limit);

  std::vector<DlMdpSolution> solutions;
  MatrixZp power = instance.a_mat;
  for (std::uint64_t a = 1; a <= p - 1; ++a) {
    if (a > 1) power = mat_mul(power, instance.a_mat);
    for (auto& perm : matching_perms(instance.b_mat, power)) {
      solutions.push_back({a, std::move(perm)});
    }
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

std::vector<PermutationMatrix> solve_with_exponent(const DlMdpInstance& instance,
                                                   std::uint64_t exponent,
                                                   std::size_t n_limit) {
  check_instance_shape(instance);
  check_n_limit(instance.a_mat.rows(), n_limit);
  return matching_perms(instance.b_mat, mat_pow(instance.a_mat, exponent));
}

std::vector<std::uint64_t> solve_with_perm(const DlMdpInstance& instance,
                                           const PermutationMatrix& perm,
                                           std::uint64_t p_limit) {
  check_instance_shape(instance);
  const auto p = instance.a_mat.params().modulus();
  check_p_limit(p, p_limit);
  const auto target = perm.inverse().apply(instance.b_mat);
  std::vector<std::uint64_t> exponents;
  MatrixZp power = instance.a_mat;
  for (std::uint64_t a = 1; a <= p - 1; ++a) {
    if (a > 1) power = mat_mul(power, instance.a_mat);
    if (power == target) exponents.push_back(a);
  }
  return exponents;
}

// ---------------------------------------------------------------- estimators

double log2_big(const BigInt& x) {
  if (x <= 0) throw InvalidParameter("log2 of a non-positive integer");
  const auto msb = static_cast<long>(boost::multiprecision::msb(x));
  if (msb < 63) {
    return std::log2(static_cast<double>(static_cast<std::uint64_t>(x)));
  }
  const long shift = msb - 62;
  const auto top = static_cast<std::uint64_t>(BigInt(x >> shift));
  return std::log2(static_cast<double>(top)) + static_cast<double>(shift);
}

namespace {
long double log2_factorial(std::size_t n) {
  long double sum = 0;
  for (std::size_t k = 2; k <= n; ++k) sum += std::log2(static_cast<long double>(k));
  return sum;
}

void check_estimator_args(std::size_t n, const BigInt& p) {
  if (n < 2) throw InvalidParameter("estimator needs n >= 2");
  if (p < 3) throw InvalidParameter("estimator needs p >= 3");
}
} // namespace

double classical_security_bits(std::size_t n, const BigInt& p) {
  check_estimator_args(n, p);
  const long double log2n = std::log2(static_cast<long double>(n));
  const long double total = static_cast<long double>(log2_big(p - 1)) + log2_factorial(n) +
                            3 * log2n + std::log2(static_cast<long double>(log2_big(p)));
  return static_cast<double>(total);
}

SecurityEstimate estimate_security(std::size_t n, const BigInt& p, double level) {
  if (!(level > 0)) throw InvalidParameter("security level must be positive");
  const double bits = classical_security_bits(n, p);
  return SecurityEstimate{bits,         2 * bits,          level,
                          bits >= level, bits >= 2 * level, 2 * bits >= level};
}

bool quantum_security_ok_strict(std::size_t n, const BigInt& p, double level) {
  return estimate_security(n, p, level).meets_quantum_strict;
}

bool quantum_security_ok_halved(std::size_t n, const BigInt& p, double level) {
  return estimate_security(n, p, level).meets_quantum_halved;
}

double keyspace_bits(std::size_t n, const BigInt& p) {
  check_estimator_args(n, p);
  const long double log2n = std::log2(static_cast<long double>(n));
  const long double total = 2 * log2_factorial(n) + 2 * static_cast<long double>(n) * log2n +
                            static_cast<long double>(log2_big(p - 2));
  return static_cast<double>(total);
}

BigInt largest_prime_below_pow2(unsigned bits) {
  if (bits < 3) throw InvalidParameter("need at least 3 bits");
  std::mt19937_64 witness_rng(0x6e6e736967ULL);
  BigInt candidate = (BigInt(1) << bits) - 1;
  while (!boost::multiprecision::miller_rabin_test(candidate, 40, witness_rng)) {
    candidate -= 2;
  }
  return candidate;
}

} // namespace nnsig
