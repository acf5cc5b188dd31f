#include "nnsig/matz.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nnsig/errors.hpp"
#include "nnsig/rng.hpp"

namespace nnsig {

namespace {
using u128 = unsigned __int128;

// Each product is below 2^122 when p < 2^61, so 32 of them fit in a u128.
constexpr std::size_t kReduceEvery = 32;

void require_same_field(const FieldParams& a, const FieldParams& b, const char* op) {
  if (!(a == b)) {
    throw DimensionMismatch(std::string(op) + ": operands use different moduli");
  }
}

void require_square(const MatrixZp& a, const char* op) {
  if (!a.is_square()) {
    throw DimensionMismatch(std::string(op) + ": matrix is not square");
  }
}

void check_entries(const FieldParams& params, std::span<const std::uint64_t> entries) {
  for (auto v : entries) {
    if (v >= params.modulus()) {
      throw InvalidParameter("entry " + std::to_string(v) + " is not below p");
    }
  }
}

std::uint64_t dot_mod(std::span<const std::uint64_t> a, const std::uint64_t* b,
                      std::size_t stride, const FieldParams& f) {
  const auto p = f.modulus();
  u128 acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += static_cast<u128>(a[k]) * b[k * stride];
    if ((k + 1) % kReduceEvery == 0) acc %= p;
  }
  return static_cast<std::uint64_t>(acc % p);
}
} // namespace

// ---------------------------------------------------------------- VectorZp

VectorZp::VectorZp(const FieldParams& params, std::size_t len)
    : params_(params), entries_(len, 0) {}

VectorZp::VectorZp(const FieldParams& params, std::vector<std::uint64_t> entries)
    : params_(params), entries_(std::move(entries)) {
  check_entries(params_, entries_);
}

VectorZp VectorZp::random(const FieldParams& params, std::size_t len, SeededRng& rng) {
  VectorZp v(params, len);
  for (auto& e : v.entries_) e = rng.uniform_below(params.modulus());
  return v;
}

void VectorZp::set(std::size_t i, std::uint64_t v) {
  if (v >= params_.modulus()) {
    throw InvalidParameter("entry is not below p");
  }
  entries_.at(i) = v;
}

VectorZp VectorZp::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > entries_.size()) {
    throw DimensionMismatch("slice out of range");
  }
  return VectorZp(params_, std::vector<std::uint64_t>(entries_.begin() + offset,
                                                      entries_.begin() + offset + len));
}

VectorZp concat(const VectorZp& head, const VectorZp& tail) {
  require_same_field(head.params(), tail.params(), "concat");
  std::vector<std::uint64_t> out(head.entries().begin(), head.entries().end());
  out.insert(out.end(), tail.entries().begin(), tail.entries().end());
  return VectorZp(head.params(), std::move(out));
}

VectorZp vec_add(const VectorZp& a, const VectorZp& b) {
  require_same_field(a.params(), b.params(), "vec_add");
  if (a.size() != b.size()) throw DimensionMismatch("vec_add: length mismatch");
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add_raw(a[i], b[i]);
  detail::count_add(out.size());
  return VectorZp(f, std::move(out));
}

VectorZp vec_sub(const VectorZp& a, const VectorZp& b) {
  require_same_field(a.params(), b.params(), "vec_sub");
  if (a.size() != b.size()) throw DimensionMismatch("vec_sub: length mismatch");
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub_raw(a[i], b[i]);
  detail::count_add(out.size());
  return VectorZp(f, std::move(out));
}

VectorZp vec_scale(const VectorZp& v, std::uint64_t scalar) {
  const auto& f = v.params();
  scalar %= f.modulus();
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.mul_raw(v[i], scalar);
  detail::count_mul(out.size());
  return VectorZp(f, std::move(out));
}

// ---------------------------------------------------------------- MatrixZp

MatrixZp::MatrixZp(const FieldParams& params, std::size_t rows, std::size_t cols)
    : params_(params), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (rows == 0 || cols == 0) {
    throw InvalidParameter("matrix dimensions must be positive");
  }
}

MatrixZp::MatrixZp(const FieldParams& params, std::size_t rows, std::size_t cols,
                   std::vector<std::uint64_t> entries)
    : params_(params), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw InvalidParameter("matrix dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw InvalidParameter("matrix entry count does not match dimensions");
  }
  check_entries(params_, entries_);
}

MatrixZp MatrixZp::identity(const FieldParams& params, std::size_t n) {
  MatrixZp m(params, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

MatrixZp MatrixZp::random(const FieldParams& params, std::size_t rows, std::size_t cols,
                          SeededRng& rng) {
  MatrixZp m(params, rows, cols);
  for (auto& e : m.entries_) e = rng.uniform_below(params.modulus());
  return m;
}

MatrixZp MatrixZp::random_invertible(const FieldParams& params, std::size_t n,
                                     SeededRng& rng) {
  for (;;) {
    auto m = random(params, n, n, rng);
    if (det(m).value != 0) return m;
  }
}

void MatrixZp::set(std::size_t r, std::size_t c, std::uint64_t v) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("set: index out of range");
  if (v >= params_.modulus()) throw InvalidParameter("entry is not below p");
  entries_[r * cols_ + c] = v;
}

MatrixZp mat_mul(const MatrixZp& a, const MatrixZp& b) {
  require_same_field(a.params(), b.params(), "mat_mul");
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
  const auto& f = a.params();
  const std::size_t n = a.rows(), m = b.cols(), inner = a.cols();
  std::vector<std::uint64_t> out(n * m);
  const std::uint64_t* bp = b.entries().data();
  for (std::size_t i = 0; i < n; ++i) {
    auto arow = a.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      out[i * m + j] = dot_mod(arow, bp + j, m, f);
    }
  }
  detail::count_mul(n * m * inner);
  detail::count_add(n * m * (inner - 1));
  return MatrixZp(f, n, m, std::move(out));
}

MatrixZp mat_add(const MatrixZp& a, const MatrixZp& b) {
  require_same_field(a.params(), b.params(), "mat_add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("mat_add: shape mismatch");
  }
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.add_raw(a.entries()[i], b.entries()[i]);
  }
  detail::count_add(out.size());
  return MatrixZp(f, a.rows(), a.cols(), std::move(out));
}

MatrixZp mat_pow(const MatrixZp& a, std::uint64_t e) {
  require_square(a, "mat_pow");
  MatrixZp result = MatrixZp::identity(a.params(), a.rows());
  if (e == 0) return result;
  MatrixZp base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : mat_mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

MatrixZp mat_inv(const MatrixZp& a) {
  require_square(a, "mat_inv");
  const auto& f = a.params();
  const std::size_t n = a.rows();
  std::vector<std::uint64_t> work(a.entries().begin(), a.entries().end());
  std::vector<std::uint64_t> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  auto w = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return work[r * n + c]; };
  auto v = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return inv[r * n + c]; };

  std::uint64_t muls = 0, adds = 0, invs = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix();
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(w(pivot, c), w(col, c));
        std::swap(v(pivot, c), v(col, c));
      }
    }
    const std::uint64_t scale = f.inv_raw(w(col, col));
    ++invs;
    for (std::size_t c = 0; c < n; ++c) {
      w(col, c) = f.mul_raw(w(col, c), scale);
      v(col, c) = f.mul_raw(v(col, c), scale);
    }
    muls += 2 * n;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::uint64_t factor = w(r, col);
      if (factor == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        w(r, c) = f.sub_raw(w(r, c), f.mul_raw(factor, w(col, c)));
        v(r, c) = f.sub_raw(v(r, c), f.mul_raw(factor, v(col, c)));
      }
      muls += 2 * n;
      adds += 2 * n;
    }
  }
  detail::count_mul(muls);
  detail::count_add(adds);
  detail::count_inv(invs);
  return MatrixZp(f, n, n, std::move(inv));
}

FieldElement det(const MatrixZp& a) {
  require_square(a, "det");
  const auto& f = a.params();
  const std::size_t n = a.rows();
  std::vector<std::uint64_t> work(a.entries().begin(), a.entries().end());
  auto w = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return work[r * n + c]; };

  std::uint64_t result = 1;
  std::uint64_t muls = 0, adds = 0, invs = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w(pivot, col) == 0) ++pivot;
    if (pivot == n) return {0};
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(w(pivot, c), w(col, c));
      result = f.neg({result}).value;
    }
    result = f.mul_raw(result, w(col, col));
    const std::uint64_t pivot_inv = f.inv_raw(w(col, col));
    ++invs;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (w(r, col) == 0) continue;
      const std::uint64_t factor = f.mul_raw(w(r, col), pivot_inv);
      for (std::size_t c = col; c < n; ++c) {
        w(r, c) = f.sub_raw(w(r, c), f.mul_raw(factor, w(col, c)));
      }
      muls += n - col + 1;
      adds += n - col;
    }
  }
  detail::count_mul(muls + n);
  detail::count_add(adds);
  detail::count_inv(invs);
  return {result};
}

MatrixZp transpose(const MatrixZp& a) {
  MatrixZp t(a.params(), a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t.set(c, r, a.at(r, c));
  }
  return t;
}

MatrixZp diag_from_vector(const VectorZp& v) {
  const std::size_t n = v.size();
  MatrixZp d(v.params(), n, n);
  for (std::size_t i = 0; i < n; ++i) d.set(i, i, v[i]);
  return d;
}

MatrixZp mul_diag_right(const MatrixZp& a, const VectorZp& v) {
  require_same_field(a.params(), v.params(), "mul_diag_right");
  if (a.cols() != v.size()) throw DimensionMismatch("mul_diag_right: length mismatch");
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.entries().begin(), a.entries().end());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out[r * a.cols() + c] = f.mul_raw(out[r * a.cols() + c], v[c]);
    }
  }
  detail::count_mul(out.size());
  return MatrixZp(f, a.rows(), a.cols(), std::move(out));
}

VectorZp mat_vec(const MatrixZp& a, const VectorZp& v) {
  require_same_field(a.params(), v.params(), "mat_vec");
  if (a.cols() != v.size()) throw DimensionMismatch("mat_vec: length mismatch");
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out[r] = dot_mod(a.row(r), v.entries().data(), 1, f);
  }
  detail::count_mul(a.rows() * a.cols());
  detail::count_add(a.rows() * (a.cols() - 1));
  return VectorZp(f, std::move(out));
}

VectorZp vec_mat(const VectorZp& v, const MatrixZp& a) {
  require_same_field(a.params(), v.params(), "vec_mat");
  if (a.rows() != v.size()) throw DimensionMismatch("vec_mat: length mismatch");
  const auto& f = a.params();
  std::vector<std::uint64_t> out(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    out[c] = dot_mod(v.entries(), a.entries().data() + c, a.cols(), f);
  }
  detail::count_mul(a.rows() * a.cols());
  detail::count_add(a.cols() * (a.rows() - 1));
  return VectorZp(f, std::move(out));
}

// ------------------------------------------------------- PermutationMatrix

PermutationMatrix::PermutationMatrix(std::vector<std::uint32_t> perm) : perm_(std::move(perm)) {
  if (perm_.empty()) throw InvalidParameter("permutation must be non-empty");
  std::vector<bool> seen(perm_.size(), false);
  for (auto idx : perm_) {
    if (idx >= perm_.size() || seen[idx]) {
      throw InvalidParameter("index array is not a permutation");
    }
    seen[idx] = true;
  }
}

PermutationMatrix PermutationMatrix::identity(std::size_t n) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  return PermutationMatrix(std::move(perm));
}

PermutationMatrix PermutationMatrix::random(std::size_t n, SeededRng& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  // Explicit Fisher-Yates keeps the draw sequence independent of the standard library.
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
  }
  return PermutationMatrix(std::move(perm));
}

PermutationMatrix PermutationMatrix::inverse() const {
  std::vector<std::uint32_t> inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = static_cast<std::uint32_t>(i);
  return PermutationMatrix(std::move(inv));
}

MatrixZp PermutationMatrix::to_matrix(const FieldParams& params) const {
  MatrixZp m(params, size(), size());
  for (std::size_t i = 0; i < size(); ++i) m.set(i, perm_[i], 1);
  return m;
}

MatrixZp PermutationMatrix::apply(const MatrixZp& m) const {
  if (m.rows() != size()) throw DimensionMismatch("permutation apply: row count mismatch");
  std::vector<std::uint64_t> out;
  out.reserve(m.entries().size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto src = m.row(perm_[i]);
    out.insert(out.end(), src.begin(), src.end());
  }
  return MatrixZp(m.params(), m.rows(), m.cols(), std::move(out));
}

VectorZp PermutationMatrix::apply(const VectorZp& v) const {
  if (v.size() != size()) throw DimensionMismatch("permutation apply: length mismatch");
  std::vector<std::uint64_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = v[perm_[i]];
  return VectorZp(v.params(), std::move(out));
}

// ---------------------------------------------------------------- encodings

void encode_matrix(const MatrixZp& m, ByteWriter& out) {
  out.put_u32(static_cast<std::uint32_t>(m.rows()));
  out.put_u32(static_cast<std::uint32_t>(m.cols()));
  for (auto e : m.entries()) encode_element(e, m.params(), out);
}

MatrixZp decode_matrix(ByteReader& in, const FieldParams& params) {
  const std::uint64_t rows = in.get_u32();
  const std::uint64_t cols = in.get_u32();
  if (rows == 0 || cols == 0) {
    throw MalformedEncoding("matrix with a zero dimension");
  }
  if (rows * cols > in.remaining() / params.bytes_per_element()) {
    throw MalformedEncoding("matrix body truncated");
  }
  std::vector<std::uint64_t> entries(rows * cols);
  for (auto& e : entries) e = decode_element(in, params);
  return MatrixZp(params, rows, cols, std::move(entries));
}

void encode_vector(const VectorZp& v, ByteWriter& out) {
  out.put_u32(static_cast<std::uint32_t>(v.size()));
  encode_vector_entries(v, out);
}

VectorZp decode_vector(ByteReader& in, const FieldParams& params) {
  const std::uint64_t len = in.get_u32();
  if (len == 0) throw MalformedEncoding("empty vector");
  return decode_vector_entries(in, params, len);
}

void encode_vector_entries(const VectorZp& v, ByteWriter& out) {
  for (auto e : v.entries()) encode_element(e, v.params(), out);
}

VectorZp decode_vector_entries(ByteReader& in, const FieldParams& params, std::size_t len) {
  if (len > in.remaining() / params.bytes_per_element()) {
    throw MalformedEncoding("vector body truncated");
  }
  std::vector<std::uint64_t> entries(len);
  for (auto& e : entries) e = decode_element(in, params);
  return VectorZp(params, std::move(entries));
}

} // namespace nnsig
