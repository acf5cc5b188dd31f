#include <doctest.h>

#include <array>
#include <map>

#include "nnsig/errors.hpp"
#include "nnsig/matz.hpp"
#include "nnsig/rng.hpp"

using namespace nnsig;

namespace {
SeededRng make_rng(const char* domain) {
  const std::array<std::uint8_t, 3> seed{9, 9, 9};
  return SeededRng(seed, domain);
}

MatrixZp m2(std::uint64_t p, std::vector<std::uint64_t> entries) {
  return MatrixZp(FieldParams(p), 2, 2, std::move(entries));
}

// Schoolbook product without the lazy reduction used by the library kernel.
MatrixZp naive_mul(const MatrixZp& a, const MatrixZp& b) {
  const auto p = a.params().modulus();
  MatrixZp out(a.params(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc = (acc + static_cast<unsigned __int128>(a.at(i, k)) * b.at(k, j) % p) % p;
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

MatrixZp naive_pow(const MatrixZp& a, std::uint64_t e) {
  auto out = MatrixZp::identity(a.params(), a.rows());
  for (std::uint64_t i = 0; i < e; ++i) out = naive_mul(out, a);
  return out;
}

// Laplace expansion, fine for n <= 5.
std::uint64_t naive_det(const MatrixZp& a) {
  const auto n = a.rows();
  const auto p = a.params().modulus();
  if (n == 1) return a.at(0, 0);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    MatrixZp minor(a.params(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0, mc = 0; k < n; ++k) {
        if (k != c) minor.set(r - 1, mc++, a.at(r, k));
      }
    }
    const auto term = a.at(0, c) * naive_det(minor) % p;
    total = c % 2 == 0 ? (total + term) % p : (total + p - term) % p;
  }
  return total;
}
} // namespace

TEST_CASE("construction validates shape and entries") {
  const FieldParams fp(7);
  CHECK_THROWS_AS(MatrixZp(fp, 0, 2), InvalidParameter);
  CHECK_THROWS_AS(MatrixZp(fp, 2, 2, {1, 2, 3}), InvalidParameter);
  CHECK_THROWS_AS(MatrixZp(fp, 1, 2, {1, 7}), InvalidParameter);
  CHECK_THROWS_AS(VectorZp(fp, std::vector<std::uint64_t>{8}), InvalidParameter);
  MatrixZp m(fp, 2, 3);
  CHECK_THROWS(m.set(0, 0, 7));
}

TEST_CASE("hand-computed products") {
  const auto a = m2(5, {1, 1, 0, 1});
  CHECK(mat_mul(a, a) == m2(5, {1, 2, 0, 1}));
  CHECK(mat_pow(a, 3) == m2(5, {1, 3, 0, 1}));
  CHECK(mat_pow(a, 3) == naive_pow(a, 3));
  CHECK(mat_pow(a, 0) == MatrixZp::identity(FieldParams(5), 2));
  CHECK(mat_pow(a, 1) == a);
  CHECK(det(m2(5, {2, 1, 1, 2})).value == 3);

  const VectorZp v(FieldParams(5), std::vector<std::uint64_t>{1, 2});
  CHECK(vec_mat(v, a) == VectorZp(FieldParams(5), std::vector<std::uint64_t>{1, 3}));
  CHECK(mat_vec(a, v) == VectorZp(FieldParams(5), std::vector<std::uint64_t>{3, 2}));
}

TEST_CASE("known inverse over Z_11") {
  const FieldParams fp(11);
  const MatrixZp m(fp, 3, 3, {2, 1, 2, 1, 2, 9, 1, 2, 7});
  const MatrixZp expected(fp, 3, 3, {8, 6, 1, 7, 9, 10, 0, 6, 5});
  CHECK(mat_inv(m) == expected);
}

TEST_CASE("identity laws and associativity") {
  auto rng = make_rng("assoc");
  const FieldParams p7(7);
  const FieldParams p11(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = MatrixZp::random(p7, 3, 3, rng);
    CHECK(mat_mul(MatrixZp::identity(p7, 3), a) == a);
    CHECK(mat_mul(a, MatrixZp::identity(p7, 3)) == a);
    const auto x = MatrixZp::random(p11, 4, 4, rng);
    const auto y = MatrixZp::random(p11, 4, 4, rng);
    const auto z = MatrixZp::random(p11, 4, 4, rng);
    CHECK(mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z)));
  }
}

TEST_CASE("kernel matches schoolbook product at 61 bits") {
  auto rng = make_rng("wide");
  const FieldParams fp(2305843009213693951ULL);
  for (std::size_t n : {1u, 7u, 33u, 70u}) {
    const auto a = MatrixZp::random(fp, n, n + 1, rng);
    const auto b = MatrixZp::random(fp, n + 1, 3, rng);
    CHECK(mat_mul(a, b) == naive_mul(a, b));
  }
  MatrixZp full(fp, 70, 70);
  for (std::size_t i = 0; i < 70; ++i) {
    for (std::size_t j = 0; j < 70; ++j) full.set(i, j, fp.modulus() - 1);
  }
  CHECK(mat_mul(full, full) == naive_mul(full, full));
}

TEST_CASE("power laws against repeated multiplication") {
  auto rng = make_rng("pow");
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t primes[] = {5, 7, 11, 31, 97};
    const FieldParams fp(primes[rng.uniform_below(5)]);
    const std::size_t n = 1 + rng.uniform_below(5);
    const auto a = MatrixZp::random(fp, n, n, rng);
    const auto e1 = rng.uniform_below(51);
    const auto e2 = rng.uniform_below(51);
    REQUIRE(mat_pow(a, e1) == naive_pow(a, e1));
    REQUIRE(mat_pow(a, e1 + e2) == mat_mul(mat_pow(a, e1), mat_pow(a, e2)));
  }
}

TEST_CASE("inverse, determinant and transpose properties") {
  auto rng = make_rng("inverse");
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t primes[] = {5, 7, 13, 97, 257};
    const FieldParams fp(primes[rng.uniform_below(5)]);
    const std::size_t n = 1 + rng.uniform_below(5);
    const auto a = MatrixZp::random_invertible(fp, n, rng);
    const auto b = MatrixZp::random_invertible(fp, n, rng);
    const auto id = MatrixZp::identity(fp, n);
    REQUIRE(mat_mul(a, mat_inv(a)) == id);
    REQUIRE(mat_mul(mat_inv(a), a) == id);
    REQUIRE(mat_inv(mat_mul(a, b)) == mat_mul(mat_inv(b), mat_inv(a)));
    REQUIRE(det(mat_mul(a, b)) == fp.mul(det(a), det(b)));
    const auto c = MatrixZp::random(fp, n, n, rng);
    REQUIRE(det(c).value == naive_det(c));
    REQUIRE(det(transpose(c)) == det(c));
    REQUIRE(transpose(transpose(c)) == c);
  }
}

TEST_CASE("singular matrices") {
  CHECK_THROWS_AS(mat_inv(m2(5, {1, 1, 1, 1})), SingularMatrix);
  CHECK(det(m2(5, {1, 1, 1, 1})).value == 0);
  const FieldParams fp(13);
  const MatrixZp dup(fp, 3, 3, {1, 2, 3, 4, 5, 6, 1, 2, 3});
  CHECK(det(dup).value == 0);
  CHECK_THROWS_AS(mat_inv(dup), SingularMatrix);
  CHECK_THROWS_AS(mat_inv(MatrixZp(fp, 2, 3)), DimensionMismatch);
  CHECK(det(MatrixZp::identity(fp, 6)).value == 1);
  CHECK(mat_inv(MatrixZp::identity(fp, 6)) == MatrixZp::identity(fp, 6));
}

TEST_CASE("determinant tracks row swaps") {
  const FieldParams fp(7);
  // needs a swap at the first pivot
  const MatrixZp m(fp, 2, 2, {0, 1, 1, 0});
  CHECK(det(m).value == 6);
  const MatrixZp m3(fp, 3, 3, {0, 2, 0, 0, 0, 3, 4, 0, 0});
  CHECK(det(m3).value == naive_det(m3));
}

TEST_CASE("dimension mismatches") {
  const FieldParams fp(7);
  CHECK_THROWS_AS(mat_mul(MatrixZp(fp, 2, 3), MatrixZp(fp, 2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(mat_add(MatrixZp(fp, 2, 3), MatrixZp(fp, 3, 2)), DimensionMismatch);
  CHECK_THROWS_AS(mat_mul(MatrixZp(fp, 2, 2), MatrixZp(FieldParams(5), 2, 2)),
                  DimensionMismatch);
  CHECK_THROWS_AS(mat_vec(MatrixZp(fp, 2, 3), VectorZp(fp, 2)), DimensionMismatch);
  CHECK_THROWS_AS(vec_mat(VectorZp(fp, 3), MatrixZp(fp, 2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(vec_add(VectorZp(fp, 3), VectorZp(fp, 2)), DimensionMismatch);
  CHECK_THROWS_AS(mat_pow(MatrixZp(fp, 2, 3), 2), DimensionMismatch);
}

TEST_CASE("vector algebra") {
  auto rng = make_rng("vec");
  const FieldParams fp(257);
  for (int t = 0; t < 100; ++t) {
    const auto v = VectorZp::random(fp, 9, rng);
    const auto w = VectorZp::random(fp, 9, rng);
    CHECK(vec_sub(vec_add(v, w), w) == v);
    CHECK(vec_mat(v, MatrixZp::identity(fp, 9)) == v);
    CHECK(vec_add(v, VectorZp(fp, 9)) == v);
    CHECK(vec_scale(v, 2) == vec_add(v, v));
    CHECK(concat(v.slice(0, 4), v.slice(4, 5)) == v);
    const auto a = MatrixZp::random(fp, 9, 9, rng);
    CHECK(vec_mat(v, a) == mat_vec(transpose(a), v));
  }
  const VectorZp v(fp, 3);
  CHECK_THROWS(v.slice(2, 2));
}

TEST_CASE("diagonal constructors") {
  const FieldParams fp(5);
  const VectorZp ones(fp, std::vector<std::uint64_t>{1, 1, 1});
  CHECK(diag_from_vector(ones) == MatrixZp::identity(fp, 3));
  const VectorZp v(fp, std::vector<std::uint64_t>{2, 3});
  CHECK(diag_from_vector(v) == m2(5, {2, 0, 0, 3}));
  CHECK(det(diag_from_vector(v)).value == 1);
  const VectorZp with_zero(fp, std::vector<std::uint64_t>{2, 0});
  CHECK_THROWS_AS(mat_inv(diag_from_vector(with_zero)), SingularMatrix);

  auto rng = make_rng("diag");
  const FieldParams p97(97);
  for (int t = 0; t < 30; ++t) {
    const auto a = MatrixZp::random(p97, 5, 5, rng);
    const auto d = VectorZp::random(p97, 5, rng);
    CHECK(mul_diag_right(a, d) == mat_mul(a, diag_from_vector(d)));
  }
}

TEST_CASE("permutations") {
  auto rng = make_rng("perm");
  const FieldParams fp(97);
  CHECK_THROWS_AS(PermutationMatrix({0, 0, 1}), InvalidParameter);
  CHECK_THROWS_AS(PermutationMatrix({0, 3, 1}), InvalidParameter);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.uniform_below(8);
    const auto perm = PermutationMatrix::random(n, rng);
    const auto dense = perm.to_matrix(fp);
    CHECK(mat_inv(dense) == transpose(dense));
    CHECK(perm.inverse().to_matrix(fp) == transpose(dense));
    const auto m = MatrixZp::random(fp, n, 3, rng);
    CHECK(perm.apply(m) == mat_mul(dense, m));
    const auto v = VectorZp::random(fp, n, rng);
    CHECK(perm.apply(v) == mat_vec(dense, v));
    CHECK(perm.inverse().apply(perm.apply(v)) == v);
  }
  // row i of L*M is row perm[i] of M
  const PermutationMatrix swap({1, 0});
  CHECK(swap.apply(m2(5, {1, 2, 3, 4})) == m2(5, {3, 4, 1, 2}));
}

TEST_CASE("random permutations are roughly uniform") {
  auto rng = make_rng("perm-uniform");
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int t = 0; t < 6000; ++t) {
    const auto perm = PermutationMatrix::random(3, rng);
    counts[{perm.indices().begin(), perm.indices().end()}]++;
  }
  CHECK(counts.size() == 6);
  for (const auto& [_, c] : counts) {
    CHECK(c > 850);
    CHECK(c < 1150);
  }
}

TEST_CASE("encodings roundtrip and reject damage") {
  auto rng = make_rng("encode");
  const FieldParams fp(257);
  for (int t = 0; t < 100; ++t) {
    const auto m = MatrixZp::random(fp, 1 + rng.uniform_below(6), 1 + rng.uniform_below(6), rng);
    ByteWriter out;
    encode_matrix(m, out);
    CHECK(out.bytes().size() == 8 + 2 * m.rows() * m.cols());
    ByteReader in(out.bytes());
    CHECK(decode_matrix(in, fp) == m);
    CHECK(in.at_end());

    const auto v = VectorZp::random(fp, 1 + rng.uniform_below(9), rng);
    ByteWriter vout;
    encode_vector(v, vout);
    ByteReader vin(vout.bytes());
    CHECK(decode_vector(vin, fp) == v);
  }

  ByteWriter out;
  encode_matrix(m2(5, {1, 2, 3, 4}), out);
  CHECK(out.bytes() == Bytes{2, 0, 0, 0, 2, 0, 0, 0, 1, 2, 3, 4});

  Bytes truncated = out.bytes();
  truncated.pop_back();
  ByteReader tin(truncated);
  CHECK_THROWS_AS(decode_matrix(tin, FieldParams(5)), MalformedEncoding);

  const Bytes zero_dim{0, 0, 0, 0, 2, 0, 0, 0};
  ByteReader zin(zero_dim);
  CHECK_THROWS_AS(decode_matrix(zin, FieldParams(5)), MalformedEncoding);

  const Bytes out_of_range{1, 0, 0, 0, 1, 0, 0, 0, 5};
  ByteReader rin(out_of_range);
  CHECK_THROWS_AS(decode_matrix(rin, FieldParams(5)), MalformedEncoding);

  const Bytes huge{0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 1};
  ByteReader hin(huge);
  CHECK_THROWS_AS(decode_matrix(hin, FieldParams(5)), MalformedEncoding);
}
