#include <doctest.h>

#include <array>
#include <cmath>

#include "nnsig/bwn.hpp"
#include "nnsig/errors.hpp"
#include "nnsig/rng.hpp"

using namespace nnsig;

namespace {
SeededRng make_rng(const char* domain) {
  const std::array<std::uint8_t, 2> seed{0x42, 0x17};
  return SeededRng(seed, domain);
}

VectorZp vec(std::uint64_t p, std::vector<std::uint64_t> v) {
  return VectorZp(FieldParams(p), std::move(v));
}

NetworkConfig config_for(std::size_t n, std::uint64_t p, std::size_t rho, std::uint8_t tag) {
  return NetworkConfig{n, FieldParams(p), rho, Bytes{tag, 0x5a}};
}

AttentionSchedule random_schedule(const FieldParams& fp, std::size_t n, std::size_t rho,
                                  SeededRng& rng) {
  std::vector<VectorZp> vs;
  for (std::size_t j = 0; j < rho; ++j) {
    VectorZp v(fp, n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, 1 + rng.uniform_below(fp.modulus() - 1));
    vs.push_back(v);
  }
  return AttentionSchedule(std::move(vs));
}

// Scalar recurrence in signed 64-bit arithmetic, reduced only at the end of each step.
std::vector<std::int64_t> scalar_evolve(const MatrixZp& w, const AttentionSchedule& sched,
                                        std::vector<std::int64_t> s,
                                        const std::vector<std::int64_t>& theta, std::int64_t p) {
  const auto n = s.size();
  for (std::size_t j = 0; j < sched.rho(); ++j) {
    std::vector<std::int64_t> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t acc = theta[i];
      for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t wik = w.at(i, k) == 1 ? 1 : -1;
        acc += wik * (static_cast<std::int64_t>(sched[j][k]) * s[k] % p);
      }
      next[i] = ((acc % p) + p) % p;
    }
    s = next;
  }
  return s;
}
} // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(config_for(2, 5, 1, 0).validate());
  CHECK_THROWS_AS(config_for(1, 5, 1, 0).validate(), InvalidParameter);
  CHECK_THROWS_AS(config_for(4, 5, 0, 0).validate(), InvalidParameter);
}

TEST_CASE("binarization") {
  const FieldParams fp(257);
  const RealMatrix real{2, 2, {0.0, -0.2, 0.5, 0.3}};
  const auto w = binarize(real, fp);
  CHECK(w.matrix().at(0, 0) == 1);
  CHECK(w.matrix().at(0, 1) == 256);
  CHECK(w.matrix().at(1, 0) == 1);
  CHECK(w.matrix().at(1, 1) == 1);
  REQUIRE(w.real_source().has_value());
  CHECK(w.real_source()->entries == real.entries);

  CHECK_THROWS_AS(binarize(RealMatrix{2, 2, {0.1, 0.2, 0.3, 0.4}}, fp), SingularWeights);
  CHECK_THROWS_AS(binarize(RealMatrix{3, 3, std::vector<double>(9, 1.0)}, fp), SingularWeights);
  CHECK_THROWS_AS(binarize(RealMatrix{2, 3, std::vector<double>(6, 1.0)}, fp),
                  InvalidParameter);
}

TEST_CASE("weights must be plus or minus one") {
  const FieldParams fp(7);
  CHECK_THROWS_AS(SynapticWeights(MatrixZp(fp, 2, 2, {1, 2, 1, 6})), InvalidParameter);
  CHECK_THROWS_AS(SynapticWeights(MatrixZp(fp, 2, 2, {1, 1, 1, 1})), SingularWeights);
  CHECK_NOTHROW(SynapticWeights(MatrixZp(fp, 2, 2, {1, 1, 1, 6})));
}

TEST_CASE("weight sampling") {
  for (std::size_t n : {2u, 5u, 26u}) {
    const auto config = config_for(n, 257, 3, static_cast<std::uint8_t>(n));
    const auto w = sample_weights(config);
    for (auto e : w.matrix().entries()) CHECK((e == 1 || e == 256));
    CHECK(det(w.matrix()).value != 0);
    CHECK(sample_weights(config) == w);
  }
  CHECK_FALSE(sample_weights(config_for(8, 257, 3, 1)) == sample_weights(config_for(8, 257, 3, 2)));
}

TEST_CASE("attention quantizer") {
  const FieldParams fp(257);
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(quantize_attention(sigmoid(0.0), fp) == 129);
  CHECK(quantize_attention(0.0, fp) == 1);
  CHECK(quantize_attention(1.0, fp) == 256);
  CHECK(quantize_attention(0.999999, fp) == 256);
  CHECK(quantize_attention(-3.0, fp) == 1);
  CHECK(quantize_attention(7.0, fp) == 256);
  CHECK(std::abs(sigmoid(2.0) - 1.0 / (1.0 + std::exp(-2.0))) < 1e-15);
}

TEST_CASE("attention schedule") {
  const auto config = config_for(6, 257, 10, 3);
  auto rng = make_rng("state");
  const auto s0 = VectorZp::random(config.params, 6, rng);
  const auto sched = generate_attention(config, s0);
  CHECK(sched.rho() == 10);
  CHECK(sched.n() == 6);
  for (const auto& v : sched.vectors()) {
    for (auto e : v.entries()) CHECK((e >= 1 && e <= 256));
  }
  CHECK(generate_attention(config, s0) == sched);
  CHECK_FALSE(generate_attention(config_for(6, 257, 10, 4), s0) == sched);

  // sigma(s + eps) with s, eps in [0, 1) lies in [0.5, 0.731)
  for (const auto& v : sched.vectors()) {
    for (auto e : v.entries()) {
      CHECK(e >= 129);
      CHECK(e <= 1 + static_cast<std::uint64_t>(std::floor(sigmoid(2.0) * 256)));
    }
  }

  CHECK_THROWS_AS(AttentionSchedule({}), InvalidParameter);
  CHECK_THROWS_AS(AttentionSchedule({vec(7, {1, 0})}), InvalidParameter);
  CHECK_THROWS_AS(AttentionSchedule({vec(7, {1, 2}), vec(7, {1, 2, 3})}), InvalidParameter);
}

TEST_CASE("hand-unrolled two-step recurrence") {
  const FieldParams fp(5);
  const SynapticWeights w(MatrixZp(fp, 2, 2, {1, 1, 1, 4}));
  const AttentionSchedule sched({vec(5, {2, 3}), vec(5, {1, 4})});
  const auto s0 = vec(5, {1, 2});
  const auto theta = vec(5, {0, 1});
  // step 1: W (2,1) + (0,1) = (3,2); step 2: W (3,3) + (0,1) = (1,1)
  CHECK(evolve_iterative(w, sched, s0, theta) == vec(5, {1, 1}));
  const auto maps = unroll(w, sched);
  CHECK(forward(maps, s0, theta) == vec(5, {1, 1}));
}

TEST_CASE("single step with unit attention") {
  auto rng = make_rng("single");
  const auto config = config_for(5, 97, 1, 9);
  const auto w = sample_weights(config);
  const AttentionSchedule sched({VectorZp(config.params, std::vector<std::uint64_t>(5, 1))});
  const auto s0 = VectorZp::random(config.params, 5, rng);
  const VectorZp zero(config.params, 5);
  CHECK(evolve_iterative(w, sched, s0, zero) == mat_vec(w.matrix(), s0));
  CHECK(evolve_iterative(w, sched, s0, zero) == evolve_iterative(w, sched, s0, zero));
}

TEST_CASE("unroll structure") {
  auto rng = make_rng("structure");
  const FieldParams fp(97);
  const auto config = config_for(4, 97, 2, 5);
  const auto w = sample_weights(config);
  const auto sched1 = random_schedule(fp, 4, 1, rng);
  const auto m1 = unroll(w, sched1);
  CHECK(m1.w_x == mat_mul(w.matrix(), diag_from_vector(sched1[0])));
  CHECK(m1.w_theta == MatrixZp::identity(fp, 4));

  const auto sched2 = random_schedule(fp, 4, 2, rng);
  const auto m2 = unroll(w, sched2);
  const auto t0 = mat_mul(w.matrix(), diag_from_vector(sched2[0]));
  const auto t1 = mat_mul(w.matrix(), diag_from_vector(sched2[1]));
  CHECK(m2.w_x == mat_mul(t1, t0));
  CHECK(m2.w_theta == mat_add(t1, MatrixZp::identity(fp, 4)));

  // rho = 3 by the explicit sum
  const auto sched3 = random_schedule(fp, 4, 3, rng);
  const auto m3 = unroll(w, sched3);
  std::vector<MatrixZp> t;
  for (std::size_t j = 0; j < 3; ++j) t.push_back(mat_mul(w.matrix(), diag_from_vector(sched3[j])));
  CHECK(m3.w_x == mat_mul(t[2], mat_mul(t[1], t[0])));
  CHECK(m3.w_theta == mat_add(mat_add(mat_mul(t[2], t[1]), t[2]), MatrixZp::identity(fp, 4)));
}

TEST_CASE("closed form equals iteration on random configurations") {
  auto rng = make_rng("closed-form");
  const std::uint64_t primes[] = {5, 7, 11, 13, 31, 61, 97};
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(5);
    const std::size_t rho = 1 + rng.uniform_below(8);
    const auto p = primes[rng.uniform_below(7)];
    const auto config = config_for(n, p, rho, static_cast<std::uint8_t>(trial));
    const auto w = sample_weights(config);
    const auto sched = random_schedule(config.params, n, rho, rng);
    const auto s0 = VectorZp::random(config.params, n, rng);
    const auto theta = VectorZp::random(config.params, n, rng);
    const auto iterative = evolve_iterative(w, sched, s0, theta);
    REQUIRE(forward(unroll(w, sched), s0, theta) == iterative);

    std::vector<std::int64_t> s(s0.entries().begin(), s0.entries().end());
    std::vector<std::int64_t> th(theta.entries().begin(), theta.entries().end());
    const auto oracle = scalar_evolve(w.matrix(), sched, s, th, static_cast<std::int64_t>(p));
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(iterative[i] == static_cast<std::uint64_t>(oracle[i]));
    }
  }
}

TEST_CASE("unrolled map is invertible and determinant factors") {
  auto rng = make_rng("det");
  const auto config = config_for(6, 97, 5, 11);
  const auto w = sample_weights(config);
  const auto sched = random_schedule(config.params, 6, 5, rng);
  const auto maps = unroll(w, sched);
  auto expected = config.params.element(1);
  for (std::size_t j = 0; j < 5; ++j) {
    expected = config.params.mul(expected, det(mat_mul(w.matrix(), diag_from_vector(sched[j]))));
  }
  CHECK(det(maps.w_x) == expected);
  CHECK(det(maps.w_x).value != 0);
}

TEST_CASE("attention does not commute with the weights") {
  auto rng = make_rng("commute");
  int differs = 0;
  constexpr int kTrials = 200;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto config = config_for(5, 97, 4, static_cast<std::uint8_t>(trial));
    const auto w = sample_weights(config);
    const auto sched = random_schedule(config.params, 5, 4, rng);
    VectorZp prod(config.params, std::vector<std::uint64_t>(5, 1));
    for (const auto& a : sched.vectors()) {
      for (std::size_t i = 0; i < 5; ++i) prod.set(i, config.params.mul_raw(prod[i], a[i]));
    }
    const auto naive = mat_mul(mat_pow(w.matrix(), 4), diag_from_vector(prod));
    differs += !(unroll(w, sched).w_x == naive);
  }
  CHECK(differs >= kTrials * 95 / 100);
}

TEST_CASE("forward and inverse maps") {
  auto rng = make_rng("inverse");
  const auto config = config_for(8, 257, 10, 21);
  const auto w = sample_weights(config);
  auto state_rng = make_rng("initial");
  const auto sched = generate_attention(config, VectorZp::random(config.params, 8, state_rng));
  const auto maps = unroll(w, sched);
  const VectorZp zero(config.params, 8);
  CHECK(forward(maps, zero, zero) == zero);
  for (int t = 0; t < 100; ++t) {
    const auto x = VectorZp::random(config.params, 8, rng);
    const auto theta = VectorZp::random(config.params, 8, rng);
    CHECK(invert(maps, forward(maps, x, theta), theta) == x);
    const auto y = VectorZp::random(config.params, 8, rng);
    CHECK(forward(maps, invert(maps, y, theta), theta) == y);
    CHECK(invert(maps, y, zero) == mat_vec(mat_inv(maps.w_x), y));
  }
  const auto theta = VectorZp::random(config.params, 8, rng);
  CHECK(invert(maps, mat_vec(maps.w_theta, theta), theta) == zero);
  CHECK_THROWS_AS(forward(maps, VectorZp(config.params, 7), theta), DimensionMismatch);
  CHECK_THROWS_AS(evolve_iterative(w, sched, VectorZp(config.params, 7), theta),
                  DimensionMismatch);
}
