#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simsemi/field.hpp"

namespace simsemi {

/// Dense row-major matrix of exact scalars over a single field. Size-0
/// matrices (0x0, 0xk, kx0) are ordinary values.
class Matrix {
 public:
  Matrix() : field_(FieldDescriptor::rationals()) {}
  Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols);
  Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols,
         std::vector<Scalar> entries);

  static Matrix identity(const FieldDescriptor& field, std::size_t n);
  static Matrix zero(const FieldDescriptor& field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols);
  }
  /// Convenience for tests and examples: integer entries, row by row.
  static Matrix from_rows(const FieldDescriptor& field,
                          std::initializer_list<std::initializer_list<long>> rows);
  /// Columns given as rows x 1 matrices (or wider blocks), placed side by side.
  static Matrix hconcat(const FieldDescriptor& field, std::size_t rows,
                        std::span<const Matrix> blocks);
  static Matrix vconcat(const FieldDescriptor& field, std::size_t cols,
                        std::span<const Matrix> blocks);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const FieldDescriptor& field() const noexcept { return field_; }
  std::span<const Scalar> entries() const noexcept { return entries_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  Matrix column(std::size_t j) const;
  Matrix row(std::size_t i) const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  Matrix transpose() const;
  bool is_zero() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Matrix text format: `<rows> <cols>` then one whitespace-separated line
  /// per row.
  std::string to_string() const;
  static Matrix parse(const FieldDescriptor& field, std::string_view text);
  static Matrix read_file(const FieldDescriptor& field, const std::string& path);

 private:
  FieldDescriptor field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& a, std::size_t k);

/// Reduced row echelon form with first-nonzero pivoting.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Echelon rref(Matrix a);

std::size_t rank(const Matrix& a);
Matrix inverse(const Matrix& a);

/// Bases stored as the columns of `kernel` (cols x k) and `image`
/// (rows x r). Every basis vector is scaled so its first nonzero entry is 1;
/// the image basis comes from the pivot columns of `a`.
struct KernelImage {
  Matrix kernel;
  Matrix image;
};
KernelImage kernel_and_image(const Matrix& a);

/// One particular solution x of a x = b (free variables set to zero).
/// Throws DimensionMismatch when the system is inconsistent.
Matrix solve(const Matrix& a, const Matrix& b);

/// Appends standard basis vectors (scanned in index order) to the columns
/// of `vectors` until they span the whole space. Input columns must be
/// linearly independent.
Matrix extend_to_basis(const Matrix& vectors);

Matrix block_diag(const FieldDescriptor& field, std::span<const Matrix> blocks);
Matrix block_diag(std::initializer_list<Matrix> blocks);

/// Anti-diagonal permutation matrix of size d.
Matrix reversal_matrix(const FieldDescriptor& field, std::size_t d);

/// r a r^{-1}.
Matrix conjugate(const Matrix& a, const Matrix& r);

/// e * e == e.
bool is_idempotent(const Matrix& e);

}  // namespace simsemi
