#include "simsemi/matrix.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace simsemi {

namespace {

void require_same_field(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!(a == b))
    fail(ErrorCode::FieldMismatch, "field mismatch: " + a.to_string() + " vs " + b.to_string());
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

Matrix::Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols,
               std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    fail(ErrorCode::DimensionMismatch, "entry count does not match matrix shape");
  for (const auto& s : entries_) require_same_field(field_, s.field());
}

Matrix Matrix::identity(const FieldDescriptor& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(const FieldDescriptor& field,
                         std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<Scalar> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorCode::DimensionMismatch, "ragged rows");
    for (long v : row) entries.emplace_back(field, v);
  }
  return Matrix(field, r, c, std::move(entries));
}

Matrix Matrix::hconcat(const FieldDescriptor& field, std::size_t rows,
                       std::span<const Matrix> blocks) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require_same_field(field, b.field());
    if (b.rows() != rows) fail(ErrorCode::DimensionMismatch, "hconcat row count mismatch");
    cols += b.cols();
  }
  Matrix out(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, offset + j) = b(i, j);
    offset += b.cols();
  }
  return out;
}

Matrix Matrix::vconcat(const FieldDescriptor& field, std::size_t cols,
                       std::span<const Matrix> blocks) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require_same_field(field, b.field());
    if (b.cols() != cols) fail(ErrorCode::DimensionMismatch, "vconcat column count mismatch");
    rows += b.rows();
  }
  Matrix out(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(offset + i, j) = b(i, j);
    offset += b.rows();
  }
  return out;
}

Matrix Matrix::column(std::size_t j) const { return block(0, j, rows_, 1); }
Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_)
    fail(ErrorCode::DimensionMismatch, "block out of range");
  Matrix out(field_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& s : entries_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, "cannot add " + shape(*this) + " and " + shape(other));
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, "cannot subtract " + shape(other) + " from " + shape(*this));
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_)
    fail(ErrorCode::DimensionMismatch, "cannot multiply " + shape(a) + " by " + shape(b));
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  require_same_field(s.field(), a.field_);
  Matrix out = a;
  for (auto& e : out.entries_) e *= s;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.entries_ == b.entries_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).to_string();
    }
    if (m.cols() > 0) os << '\n';
  }
  return os;
}

Matrix Matrix::parse(const FieldDescriptor& field, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) fail(ErrorCode::Parse, "empty matrix text");
  std::istringstream header(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || rows < 0 || cols < 0 || (header >> extra))
    fail(ErrorCode::Parse, "bad matrix header '" + line + "'");
  std::vector<Scalar> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  // Rows of a k x 0 matrix are blank lines, which next_line skips anyway.
  for (long long i = 0; cols > 0 && i < rows; ++i) {
    if (!next_line(line))
      fail(ErrorCode::Parse, "expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
    std::istringstream row(line);
    std::string token;
    long long count = 0;
    while (row >> token) {
      if (count == cols) fail(ErrorCode::Parse, "too many entries in row " + std::to_string(i + 1));
      entries.push_back(Scalar::parse(field, token));
      ++count;
    }
    if (count != cols) fail(ErrorCode::Parse, "too few entries in row " + std::to_string(i + 1));
  }
  if (next_line(line)) fail(ErrorCode::Parse, "trailing content after matrix: '" + line + "'");
  return Matrix(field, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                std::move(entries));
}

Matrix Matrix::read_file(const FieldDescriptor& field, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(field, buf.str());
}

// ---------------------------------------------------------------------------

Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

Matrix power(const Matrix& a, std::size_t k) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "power of a non-square matrix");
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Echelon rref(Matrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref(a).pivot_cols.size(); }

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Matrix parts[] = {a, Matrix::identity(a.field(), n)};
  auto e = rref(Matrix::hconcat(a.field(), n, parts));
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
    fail(ErrorCode::SingularMatrix, "matrix is singular");
  return e.reduced.block(0, n, n, n);
}

namespace {

void normalize_leading_one(Matrix& basis, std::size_t col) {
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    if (basis(i, col).is_zero()) continue;
    if (basis(i, col).is_one()) return;
    const Scalar inv = basis(i, col).inverse();
    for (std::size_t k = i; k < basis.rows(); ++k) basis(k, col) *= inv;
    return;
  }
}

}  // namespace

KernelImage kernel_and_image(const Matrix& a) {
  const auto e = rref(a);
  const auto& R = e.reduced;
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  Matrix image(a.field(), a.rows(), e.pivot_cols.size());
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
    for (std::size_t i = 0; i < a.rows(); ++i) image(i, k) = a(i, e.pivot_cols[k]);
    normalize_leading_one(image, k);
  }

  Matrix kernel(a.field(), cols, cols - e.pivot_cols.size());
  std::size_t k = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    kernel(f, k) = Scalar::one(a.field());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) kernel(e.pivot_cols[r], k) = -R(r, f);
    normalize_leading_one(kernel, k);
    ++k;
  }
  return {std::move(kernel), std::move(image)};
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "solve: row count mismatch");
  const Matrix parts[] = {a, b};
  const auto e = rref(Matrix::hconcat(a.field(), a.rows(), parts));
  const std::size_t n = a.cols();
  Matrix x(a.field(), n, b.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    const auto c = e.pivot_cols[r];
    if (c >= n) fail(ErrorCode::DimensionMismatch, "solve: inconsistent system");
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(r, n + j);
  }
  return x;
}

Matrix extend_to_basis(const Matrix& vectors) {
  const std::size_t n = vectors.rows();
  std::vector<Matrix> columns;
  for (std::size_t j = 0; j < vectors.cols(); ++j) columns.push_back(vectors.column(j));
  std::size_t current = rank(vectors);
  if (current != vectors.cols())
    fail(ErrorCode::RankMismatch, "extend_to_basis: input columns are dependent");
  const Matrix id = Matrix::identity(vectors.field(), n);
  for (std::size_t i = 0; i < n && current < n; ++i) {
    columns.push_back(id.column(i));
    if (rank(Matrix::hconcat(vectors.field(), n, columns)) > current)
      ++current;
    else
      columns.pop_back();
  }
  return Matrix::hconcat(vectors.field(), n, columns);
}

Matrix block_diag(const FieldDescriptor& field, std::span<const Matrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    require_same_field(field, b.field());
    if (!b.is_square()) fail(ErrorCode::DimensionMismatch, "block_diag needs square blocks");
    n += b.rows();
  }
  Matrix out(field, n, n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(offset + i, offset + j) = b(i, j);
    offset += b.rows();
  }
  return out;
}

Matrix block_diag(std::initializer_list<Matrix> blocks) {
  if (blocks.size() == 0) fail(ErrorCode::DimensionMismatch, "block_diag of nothing");
  return block_diag(blocks.begin()->field(), std::span<const Matrix>(blocks.begin(), blocks.size()));
}

Matrix reversal_matrix(const FieldDescriptor& field, std::size_t d) {
  Matrix k(field, d, d);
  for (std::size_t i = 0; i < d; ++i) k(i, d - 1 - i) = Scalar::one(field);
  return k;
}

Matrix conjugate(const Matrix& a, const Matrix& r) {
  if (!a.is_square() || !r.is_square() || a.rows() != r.rows())
    fail(ErrorCode::DimensionMismatch, "conjugate needs square matrices of equal size");
  return r * a * inverse(r);
}

bool is_idempotent(const Matrix& e) { return e.is_square() && e * e == e; }

}  // namespace simsemi
