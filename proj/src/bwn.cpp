#include "nnsig/bwn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nnsig/errors.hpp"
#include "nnsig/rng.hpp"

namespace nnsig {

void NetworkConfig::validate() const {
  if (n < 2) throw InvalidParameter("network needs n >= 2, got " + std::to_string(n));
  if (rho < 1) throw InvalidParameter("unroll depth rho must be at least 1");
}

SynapticWeights::SynapticWeights(MatrixZp w, std::optional<RealMatrix> real_source)
    : w_(std::move(w)), real_source_(std::move(real_source)) {
  if (!w_.is_square()) throw InvalidParameter("weight matrix must be square");
  const auto minus_one = w_.params().modulus() - 1;
  for (auto e : w_.entries()) {
    if (e != 1 && e != minus_one) {
      throw InvalidParameter("weight entry " + std::to_string(e) + " is not +1 or -1 mod p");
    }
  }
  if (det(w_).value == 0) throw SingularWeights();
}

AttentionSchedule::AttentionSchedule(std::vector<VectorZp> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InvalidParameter("attention schedule is empty");
  const auto n = vectors_.front().size();
  for (const auto& v : vectors_) {
    if (v.size() != n) throw InvalidParameter("attention vectors differ in length");
    if (!(v.params() == vectors_.front().params())) {
      throw InvalidParameter("attention vectors use different moduli");
    }
    for (auto e : v.entries()) {
      if (e == 0) throw InvalidParameter("attention entry is zero");
    }
  }
}

SynapticWeights binarize(const RealMatrix& real_weights, const FieldParams& params) {
  if (real_weights.rows != real_weights.cols || real_weights.rows == 0) {
    throw InvalidParameter("binarize expects a non-empty square matrix");
  }
  if (real_weights.entries.size() != real_weights.rows * real_weights.cols) {
    throw InvalidParameter("real weight matrix has the wrong entry count");
  }
  std::vector<std::uint64_t> entries(real_weights.entries.size());
  std::transform(real_weights.entries.begin(), real_weights.entries.end(), entries.begin(),
                 [&](double x) { return x >= 0.0 ? 1 : params.modulus() - 1; });
  MatrixZp w(params, real_weights.rows, real_weights.cols, std::move(entries));
  return SynapticWeights(std::move(w), real_weights);
}

SynapticWeights sample_weights(const NetworkConfig& config, std::size_t max_attempts) {
  config.validate();
  SeededRng rng(config.seed, "weights");
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    RealMatrix real{config.n, config.n, std::vector<double>(config.n * config.n)};
    for (auto& x : real.entries) x = normal(rng);
    try {
      return binarize(real, config.params);
    } catch (const SingularWeights&) {
    }
  }
  throw SingularWeights();
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::uint64_t quantize_attention(double value, const FieldParams& params) {
  const auto top = params.modulus() - 1;
  const double scaled = std::floor(std::clamp(value, 0.0, 1.0) * static_cast<double>(top));
  const auto q = 1 + static_cast<std::uint64_t>(scaled);
  return std::min(q, top);
}

AttentionSchedule generate_attention(const NetworkConfig& config, const VectorZp& initial_state) {
  config.validate();
  if (initial_state.size() != config.n) {
    throw DimensionMismatch("initial state length differs from n");
  }
  const double p = static_cast<double>(config.params.modulus());
  SeededRng rng(config.seed, "attention");
  std::vector<VectorZp> vectors;
  vectors.reserve(config.rho);
  std::vector<std::uint64_t> previous(initial_state.entries().begin(),
                                      initial_state.entries().end());
  for (std::size_t j = 0; j < config.rho; ++j) {
    std::vector<std::uint64_t> current(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      const double state = static_cast<double>(previous[i]) / p;
      const double noise = rng.uniform_unit();
      current[i] = quantize_attention(sigmoid(state + noise), config.params);
    }
    previous = current;
    vectors.emplace_back(config.params, std::move(current));
  }
  return AttentionSchedule(std::move(vectors));
}

namespace {
void require_network_shapes(const SynapticWeights& weights, const AttentionSchedule& schedule,
                            const VectorZp& a, const VectorZp& b) {
  const auto n = weights.n();
  if (schedule.n() != n || a.size() != n || b.size() != n) {
    throw DimensionMismatch("network dimension mismatch");
  }
}
} // namespace

VectorZp evolve_iterative(const SynapticWeights& weights, const AttentionSchedule& schedule,
                          const VectorZp& s0, const VectorZp& theta) {
  require_network_shapes(weights, schedule, s0, theta);
  const auto& f = weights.params();
  VectorZp state = s0;
  for (const auto& attention : schedule.vectors()) {
    std::vector<std::uint64_t> gated(state.size());
    for (std::size_t i = 0; i < gated.size(); ++i) {
      gated[i] = f.mul_raw(attention[i], state[i]);
    }
    state = vec_add(mat_vec(weights.matrix(), VectorZp(f, std::move(gated))), theta);
  }
  return state;
}

UnrolledMaps unroll(const SynapticWeights& weights, const AttentionSchedule& schedule) {
  if (schedule.n() != weights.n()) throw DimensionMismatch("schedule length differs from n");
  const auto& f = weights.params();
  const auto n = weights.n();
  const auto rho = schedule.rho();

  // suffix = Wt_{rho-1} ... Wt_{k+1}; starts as the empty product for k = rho-1.
  MatrixZp suffix = MatrixZp::identity(f, n);
  MatrixZp w_theta = suffix;
  for (std::size_t k = rho - 1; k > 0; --k) {
    suffix = mat_mul(suffix, mul_diag_right(weights.matrix(), schedule[k]));
    w_theta = mat_add(w_theta, suffix);
  }
  MatrixZp w_x = mat_mul(suffix, mul_diag_right(weights.matrix(), schedule[0]));
  return {std::move(w_x), std::move(w_theta)};
}

VectorZp forward(const UnrolledMaps& maps, const VectorZp& x, const VectorZp& theta) {
  return vec_add(mat_vec(maps.w_x, x), mat_vec(maps.w_theta, theta));
}

VectorZp invert(const UnrolledMaps& maps, const VectorZp& y, const VectorZp& theta) {
  const auto bias = mat_vec(maps.w_theta, theta);
  return mat_vec(mat_inv(maps.w_x), vec_sub(y, bias));
}

} // namespace nnsig
