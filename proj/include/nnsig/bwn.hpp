#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nnsig/bytes.hpp"
#include "nnsig/field.hpp"
#include "nnsig/matz.hpp"

namespace nnsig {

/// Shape and seed of the binary-weight recurrent network.
struct NetworkConfig {
  std::size_t n;
  FieldParams params;
  std::size_t rho; // unroll depth
  Bytes seed;

  /// Throws InvalidParameter unless n >= 2 and rho >= 1.
  void validate() const;
};

struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries; // row-major
};

/// Weight matrix with every entry in {1, p-1} (the images of +1 and -1) and a
/// non-zero determinant mod p.
class SynapticWeights {
public:
  /// Throws InvalidParameter for a non-square matrix or an entry outside
  /// {1, p-1}; throws SingularWeights when det(w) == 0 mod p.
  explicit SynapticWeights(MatrixZp w, std::optional<RealMatrix> real_source = std::nullopt);

  const MatrixZp& matrix() const { return w_; }
  const std::optional<RealMatrix>& real_source() const { return real_source_; }
  std::size_t n() const { return w_.rows(); }
  const FieldParams& params() const { return w_.params(); }

  friend bool operator==(const SynapticWeights& a, const SynapticWeights& b) {
    return a.w_ == b.w_;
  }

private:
  MatrixZp w_;
  std::optional<RealMatrix> real_source_;
};

/// Attention vectors A_0 .. A_{rho-1}; every entry is non-zero.
class AttentionSchedule {
public:
  /// Throws InvalidParameter for an empty list, ragged lengths or a zero entry.
  explicit AttentionSchedule(std::vector<VectorZp> vectors);

  std::size_t rho() const { return vectors_.size(); }
  std::size_t n() const { return vectors_.front().size(); }
  const VectorZp& operator[](std::size_t j) const { return vectors_[j]; }
  const std::vector<VectorZp>& vectors() const { return vectors_; }

  friend bool operator==(const AttentionSchedule&, const AttentionSchedule&) = default;

private:
  std::vector<VectorZp> vectors_;
};

/// Closed-form maps of rho network steps: S_rho = f(w_x * S_0 + w_theta * theta).
struct UnrolledMaps {
  MatrixZp w_x;
  MatrixZp w_theta;
};

/// Sign binarization: x >= 0 -> 1, x < 0 -> p - 1.
SynapticWeights binarize(const RealMatrix& real_weights, const FieldParams& params);

/// Draws standard-normal real weights from the config seed and binarizes them,
/// resampling on singular results. Throws SingularWeights after max_attempts.
SynapticWeights sample_weights(const NetworkConfig& config, std::size_t max_attempts = 64);

double sigmoid(double z);
/// Maps a value in [0, 1] to 1 + floor(value * (p - 1)), clamped to [1, p - 1].
std::uint64_t quantize_attention(double value, const FieldParams& params);

/// Attention schedule A_{j,i} = quantize(sigmoid(s + eps)) with eps ~ U[0, 1)
/// from the config seed. s is initial_state[i] / p for j = 0 and the previous
/// quantized attention value divided by p afterwards.
AttentionSchedule generate_attention(const NetworkConfig& config, const VectorZp& initial_state);

/// Runs S_{t+1} = f(W (A_t . S_t) + theta) for every step of the schedule.
VectorZp evolve_iterative(const SynapticWeights& weights, const AttentionSchedule& schedule,
                          const VectorZp& s0, const VectorZp& theta);

/// w_x = Wt_{rho-1} ... Wt_0 and w_theta = sum_k Wt_{rho-1} ... Wt_{k+1},
/// with Wt_j = W diag(A_j) and the empty product equal to I.
UnrolledMaps unroll(const SynapticWeights& weights, const AttentionSchedule& schedule);

VectorZp forward(const UnrolledMaps& maps, const VectorZp& x, const VectorZp& theta);
/// x = f(w_x^{-1} (y - f(w_theta theta))).
VectorZp invert(const UnrolledMaps& maps, const VectorZp& y, const VectorZp& theta);

} // namespace nnsig
