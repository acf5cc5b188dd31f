#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nnsig/bytes.hpp"
#include "nnsig/field.hpp"

namespace nnsig {

class SeededRng;

/// Length-n vector over Z_p. Entries are raw residues in [0, p).
class VectorZp {
public:
  /// Zero vector.
  VectorZp(const FieldParams& params, std::size_t len);
  /// Throws InvalidParameter if any entry is not below p.
  VectorZp(const FieldParams& params, std::vector<std::uint64_t> entries);

  static VectorZp random(const FieldParams& params, std::size_t len, SeededRng& rng);

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::uint64_t v);
  std::span<const std::uint64_t> entries() const { return entries_; }

  /// Coordinates [offset, offset + len).
  VectorZp slice(std::size_t offset, std::size_t len) const;

  friend bool operator==(const VectorZp&, const VectorZp&) = default;

private:
  FieldParams params_;
  std::vector<std::uint64_t> entries_;
};

VectorZp concat(const VectorZp& head, const VectorZp& tail);
VectorZp vec_add(const VectorZp& a, const VectorZp& b);
VectorZp vec_sub(const VectorZp& a, const VectorZp& b);
VectorZp vec_scale(const VectorZp& v, std::uint64_t scalar);

/// Dense row-major matrix over Z_p.
class MatrixZp {
public:
  /// Zero matrix. Dimensions must be positive.
  MatrixZp(const FieldParams& params, std::size_t rows, std::size_t cols);
  /// Throws InvalidParameter on a size mismatch or an entry not below p.
  MatrixZp(const FieldParams& params, std::size_t rows, std::size_t cols,
           std::vector<std::uint64_t> entries);

  static MatrixZp identity(const FieldParams& params, std::size_t n);
  static MatrixZp random(const FieldParams& params, std::size_t rows, std::size_t cols,
                         SeededRng& rng);
  /// Uniform over GL(n, Z_p) by rejection.
  static MatrixZp random_invertible(const FieldParams& params, std::size_t n, SeededRng& rng);

  const FieldParams& params() const { return params_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::uint64_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t v);
  std::span<const std::uint64_t> row(std::size_t r) const {
    return std::span<const std::uint64_t>(entries_).subspan(r * cols_, cols_);
  }
  std::span<const std::uint64_t> entries() const { return entries_; }

  friend bool operator==(const MatrixZp&, const MatrixZp&) = default;

private:
  FieldParams params_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> entries_;
};

MatrixZp mat_mul(const MatrixZp& a, const MatrixZp& b);
MatrixZp mat_add(const MatrixZp& a, const MatrixZp& b);
/// Square-and-multiply; mat_pow(a, 0) is the identity.
MatrixZp mat_pow(const MatrixZp& a, std::uint64_t e);
/// Gauss-Jordan with modular pivots. Throws SingularMatrix.
MatrixZp mat_inv(const MatrixZp& a);
FieldElement det(const MatrixZp& a);
MatrixZp transpose(const MatrixZp& a);
MatrixZp diag_from_vector(const VectorZp& v);
/// a * diag(v) without forming the diagonal matrix: scales column j by v[j].
MatrixZp mul_diag_right(const MatrixZp& a, const VectorZp& v);

/// a * v with v as a column vector.
VectorZp mat_vec(const MatrixZp& a, const VectorZp& v);
/// v * a with v as a row vector.
VectorZp vec_mat(const VectorZp& v, const MatrixZp& a);

/// Row permutation L with L[i][perm[i]] = 1, so (L * M) row i is M row perm[i].
class PermutationMatrix {
public:
  /// Throws InvalidParameter unless `perm` is a bijection on {0..n-1}.
  explicit PermutationMatrix(std::vector<std::uint32_t> perm);

  static PermutationMatrix identity(std::size_t n);
  static PermutationMatrix random(std::size_t n, SeededRng& rng);

  std::size_t size() const { return perm_.size(); }
  std::uint32_t operator[](std::size_t i) const { return perm_[i]; }
  std::span<const std::uint32_t> indices() const { return perm_; }

  PermutationMatrix inverse() const;
  MatrixZp to_matrix(const FieldParams& params) const;
  /// L * m in O(n^2).
  MatrixZp apply(const MatrixZp& m) const;
  /// L * v in O(n).
  VectorZp apply(const VectorZp& v) const;

  friend auto operator<=>(const PermutationMatrix&, const PermutationMatrix&) = default;
  friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

private:
  std::vector<std::uint32_t> perm_;
};

// Encodings. Matrix: u32 rows, u32 cols, entries row-major at field width.
// Vector: u32 length, entries at field width. All integers little-endian.
void encode_matrix(const MatrixZp& m, ByteWriter& out);
MatrixZp decode_matrix(ByteReader& in, const FieldParams& params);
void encode_vector(const VectorZp& v, ByteWriter& out);
VectorZp decode_vector(ByteReader& in, const FieldParams& params);
/// Entries only, no length prefix.
void encode_vector_entries(const VectorZp& v, ByteWriter& out);
VectorZp decode_vector_entries(ByteReader& in, const FieldParams& params, std::size_t len);

} // namespace nnsig
